//! Zero'th Matsubara term of the Casimir pressure between identical thick
//! plates.
//!
//! ```text
//! p = k_B T ∫ dK/2π K² Σ_σ r_σ² e^{−2Kd}/(1 − r_σ² e^{−2Kd})
//! ```
//!
//! Positive pressure means attraction. With `x = 2Kd` the prefactor becomes
//! `k_B T/(16π d³)`.

use std::cell::RefCell;
use std::f64::consts::PI;

use serde::Serialize;

use crate::materials::{perfect_conductor_pressure, Material, CONSTANTS};
use crate::polylog::li3;
use crate::quadrature::{integrate, Integral, Tolerance};
use crate::reflection::{static_pair, ReflectionPair, StaticModel};
use crate::{Error, Result};

/// Slack allowed on `|r| ≤ 1` for rounding in the reflection models.
const UNIT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureQuery {
    /// Gap [m].
    pub d: f64,
    /// Temperature [K].
    pub temperature: f64,
}

impl PressureQuery {
    pub fn new(d: f64, temperature: f64) -> Result<Self> {
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::Domain(format!("gap must be positive, got {d}")));
        }
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::Domain(format!("temperature must be positive, got {temperature}")));
        }
        Ok(Self { d, temperature })
    }

    fn prefactor(&self) -> f64 {
        CONSTANTS.k_b * self.temperature / (16.0 * PI * self.d.powi(3))
    }
}

/// Pressure [Pa] with its polarisation split and quadrature diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressureResult {
    pub total: f64,
    pub s: f64,
    pub p: f64,
    pub n_evals: usize,
    pub est_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    /// Upper limit of the scaled variable `x = 2Kd`.
    pub x_max: f64,
    /// Point where the integral is split so that the tail is reported
    /// separately.
    pub x_split: f64,
    pub tolerance: Tolerance,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            x_max: 80.0,
            x_split: 80.0,
            tolerance: Tolerance::default(),
        }
    }
}

#[derive(Clone, Copy)]
enum Polarization {
    S,
    P,
}

/// `r² e^{−x}/(1 − r² e^{−x})` with the denominator written as
/// `(1 − r²) − r²(e^{−x} − 1)` to keep it accurate for `|r| → 1`, `x → 0`.
fn geometric_kernel(r: f64, x: f64) -> f64 {
    let r2 = r * r;
    if r2 == 0.0 {
        return 0.0;
    }
    r2 * (-x).exp() / ((1.0 - r2) - r2 * (-x).exp_m1())
}

/// Adaptive-quadrature evaluation for a `K`-dependent reflection pair.
pub fn pressure_zero_matsubara<F>(query: PressureQuery, refl: F, options: QuadratureOptions) -> Result<PressureResult>
where
    F: Fn(f64) -> Result<ReflectionPair>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let integrand = |pol: Polarization, x: f64| -> f64 {
        if failure.borrow().is_some() {
            return 0.0;
        }
        let k = x / (2.0 * query.d);
        let pair = match refl(k) {
            Ok(pair) => pair,
            Err(e) => {
                *failure.borrow_mut() = Some(e);
                return 0.0;
            }
        };
        let r = match pol {
            Polarization::S => pair.r_s,
            Polarization::P => pair.r_p,
        };
        if !(r.abs() <= 1.0 + UNIT_SLACK) {
            *failure.borrow_mut() = Some(Error::Domain(format!("|r| > 1 at K = {k}: r = {r}")));
            return 0.0;
        }
        x * x * geometric_kernel(r.clamp(-1.0, 1.0), x)
    };

    let split = options.x_split.min(options.x_max);
    let mut parts = [0.0; 2];
    let mut n_evals = 0;
    let mut est_error = 0.0;
    for (slot, pol) in [Polarization::S, Polarization::P].into_iter().enumerate() {
        let head = integrate(|x| integrand(pol, x), 0.0, split, options.tolerance);
        let head = finish(head, &failure, query.prefactor())?;
        let mut sum = head;
        if options.x_max > split {
            let tail = integrate(|x| integrand(pol, x), split, options.x_max, options.tolerance);
            let tail = finish(tail, &failure, query.prefactor())?;
            sum.value += tail.value;
            sum.abs_error += tail.abs_error;
            sum.n_evals += tail.n_evals;
        }
        parts[slot] = sum.value;
        n_evals += sum.n_evals;
        est_error += sum.abs_error;
    }

    let scale = query.prefactor();
    let (s, p) = (scale * parts[0], scale * parts[1]);
    let total = s + p;
    let est_error = scale * est_error;
    Ok(PressureResult {
        total,
        s,
        p,
        n_evals,
        est_error,
        converged: est_error <= 1e-8 * total.abs(),
    })
}

fn finish(result: Result<Integral>, failure: &RefCell<Option<Error>>, scale: f64) -> Result<Integral> {
    if let Some(e) = failure.borrow_mut().take() {
        return Err(e);
    }
    result.map_err(|e| match e {
        Error::NonConvergence {
            partial,
            error,
            subdivisions,
        } => Error::NonConvergence {
            partial: partial * scale,
            error: error * scale,
            subdivisions,
        },
        other => other,
    })
}

/// Closed form for `K`-independent amplitudes,
/// `p = k_B T/(8π d³) [Li₃(r_s²) + Li₃(r_p²)]`.
pub fn pressure_constant_r_series(r_s: f64, r_p: f64, d: f64, temperature: f64) -> Result<PressureResult> {
    let query = PressureQuery::new(d, temperature)?;
    for r in [r_s, r_p] {
        if !(r.abs() <= 1.0) {
            return Err(Error::Domain(format!("|r| must not exceed 1, got {r}")));
        }
    }
    let scale = 2.0 * query.prefactor();
    let s = scale * li3(r_s * r_s)?;
    let p = scale * li3(r_p * r_p)?;
    Ok(PressureResult {
        total: s + p,
        s,
        p,
        n_evals: 0,
        est_error: 2.0 * scale * 1e-15,
        converged: true,
    })
}

/// One row of a pressure curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PressurePoint {
    pub d: f64,
    pub result: PressureResult,
    /// Perfect-conductor reference `ζ(3) k_B T/(4π d³)`.
    pub perfect_conductor: f64,
}

/// Pressure by quadrature on each gap of an ascending grid.
pub fn pressure_curve(
    d_grid: &[f64],
    temperature: f64,
    model: StaticModel,
    m: &Material,
    options: QuadratureOptions,
) -> Result<Vec<PressurePoint>> {
    if d_grid.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("gap grid must be strictly ascending".into()));
    }
    d_grid
        .iter()
        .map(|&d| {
            let query = PressureQuery::new(d, temperature)?;
            let result = pressure_zero_matsubara(query, |k| static_pair(k, m, model), options)?;
            Ok(PressurePoint {
                d,
                result,
                perfect_conductor: perfect_conductor_pressure(d, temperature),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::ROOM_TEMPERATURE_K;

    fn constant(r_s: f64, r_p: f64) -> impl Fn(f64) -> Result<ReflectionPair> {
        move |k| {
            Ok(ReflectionPair {
                r_s,
                r_p,
                k,
                model: StaticModel::Drude,
            })
        }
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn perfect_conductor() {
        let q = PressureQuery::new(1e-6, ROOM_TEMPERATURE_K).unwrap();
        let got = pressure_zero_matsubara(q, constant(1.0, 1.0), QuadratureOptions::default()).unwrap();
        let want = perfect_conductor_pressure(1e-6, ROOM_TEMPERATURE_K);
        assert!(rel(got.total, want) < 1e-10);
        assert!((want - 3.8696e-4).abs() < 1e-7);
        assert!(got.converged && got.est_error < 1e-6 * got.total);
        let series = pressure_constant_r_series(1.0, 1.0, 1e-6, ROOM_TEMPERATURE_K).unwrap();
        assert!(rel(series.total, want) < 1e-15);
    }

    #[test]
    fn drude_is_half() {
        let q = PressureQuery::new(2e-6, ROOM_TEMPERATURE_K).unwrap();
        let pc = pressure_zero_matsubara(q, constant(1.0, 1.0), QuadratureOptions::default()).unwrap();
        let drude = pressure_zero_matsubara(q, constant(0.0, -1.0), QuadratureOptions::default()).unwrap();
        assert_eq!(drude.s, 0.0);
        assert!(rel(drude.total, 0.5 * pc.total) < 1e-14);
        let series = pressure_constant_r_series(0.0, -1.0, 2e-6, ROOM_TEMPERATURE_K).unwrap();
        assert!(rel(series.total, 0.5 * perfect_conductor_pressure(2e-6, ROOM_TEMPERATURE_K)) < 1e-15);
    }

    #[test]
    fn nickel_ratio() {
        let r = 109.0 / 111.0;
        let ni = pressure_constant_r_series(r, -1.0, 1e-6, 300.0).unwrap();
        let au = pressure_constant_r_series(0.0, -1.0, 1e-6, 300.0).unwrap();
        assert!((ni.total / au.total - 1.952_888_801_96).abs() < 1e-10);
    }

    #[test]
    fn tail_is_negligible() {
        let q = PressureQuery::new(1e-6, ROOM_TEMPERATURE_K).unwrap();
        let short = pressure_zero_matsubara(q, constant(1.0, 1.0), QuadratureOptions::default()).unwrap();
        let long = pressure_zero_matsubara(
            q,
            constant(1.0, 1.0),
            QuadratureOptions {
                x_max: 160.0,
                ..QuadratureOptions::default()
            },
        )
        .unwrap();
        assert!(((long.total - short.total) / short.total).abs() < 1e-30);
    }

    #[test]
    fn rejects_bad_input() {
        let q = PressureQuery::new(1e-6, ROOM_TEMPERATURE_K).unwrap();
        let err = pressure_zero_matsubara(q, constant(1.5, 1.0), QuadratureOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let failing = |_k: f64| -> Result<ReflectionPair> { Err(Error::Singular("x".into())) };
        assert!(matches!(
            pressure_zero_matsubara(q, failing, QuadratureOptions::default()),
            Err(Error::Singular(_))
        ));
        assert!(pressure_constant_r_series(1.01, 0.0, 1e-6, 300.0).is_err());
        assert!(PressureQuery::new(0.0, 300.0).is_err());
        assert!(PressureQuery::new(1e-6, -1.0).is_err());
        let opts = QuadratureOptions {
            tolerance: Tolerance {
                max_subdivisions: 0,
                absolute: 1e-30,
                relative: 1e-30,
            },
            ..QuadratureOptions::default()
        };
        assert!(matches!(
            pressure_zero_matsubara(q, constant(1.0, 1.0), opts),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn curve_orders_models() {
        let grid: Vec<f64> = (0..8).map(|i| 0.2e-6 * 1.7f64.powi(i)).collect();
        let gold = Material::gold();
        let opts = QuadratureOptions::default();
        let drude = pressure_curve(&grid, 293.0, StaticModel::Drude, &gold, opts).unwrap();
        let plasma = pressure_curve(&grid, 293.0, StaticModel::Plasma, &gold, opts).unwrap();
        let nonlocal = pressure_curve(&grid, 293.0, StaticModel::Nonlocal, &gold, opts).unwrap();
        for ((a, b), c) in drude.iter().zip(&plasma).zip(&nonlocal) {
            assert!(b.result.total > a.result.total);
            assert!(b.result.total < b.perfect_conductor);
            // the Thomas–Fermi correction is below 1% at these gaps
            assert!(rel(c.result.total, a.result.total) < 1e-2);
            assert!(c.result.total < a.result.total);
        }
        assert!(pressure_curve(&[2.0, 1.0], 293.0, StaticModel::Drude, &gold, opts).is_err());
    }
}
