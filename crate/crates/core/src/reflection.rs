//! Static (`ω → 0`) reflection amplitudes at a flat metal surface.
//!
//! The metal fills `z > 0`. Depths in the nonlocal p-polarisation problem are
//! measured in units of the Thomas–Fermi length `Λ`, and `k = KΛ`.

use nalgebra::{Matrix5, Vector5};
use num_complex::Complex64;
use serde::Serialize;

use crate::materials::{Material, CONSTANTS};
use crate::{Error, Result};

/// Static reflection model used to build a [`ReflectionPair`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StaticModel {
    Drude,
    Plasma,
    /// `|r_s| = |r_p| = 1`.
    PerfectConductor,
    /// Thomas–Fermi `r_p(K)` with the Landau-corrected `r_s`.
    Nonlocal,
}

/// Static reflection amplitudes at one surface wave vector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReflectionPair {
    pub r_s: f64,
    pub r_p: f64,
    /// Surface wave vector [1/m].
    pub k: f64,
    pub model: StaticModel,
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("surface wave vector must be positive, got {k}")))
    }
}

/// Local Fresnel limits: `r_p = −1` for both models,
/// `r_s = (μ − μ0)/(μ + μ0)` (Drude) or
/// `(μK − μ0√(K² + Ω²ε0μ))/(μK + μ0√(K² + Ω²ε0μ))` (plasma).
pub fn fresnel_static(k: f64, m: &Material, model: StaticModel) -> Result<ReflectionPair> {
    check_k(k)?;
    let mu = m.mu_over_mu0;
    let r_s = match model {
        StaticModel::Drude => (mu - 1.0) / (mu + 1.0),
        StaticModel::Plasma => {
            let kp = m.scales().omega_p / CONSTANTS.c;
            let root = (k * k + kp * kp * mu).sqrt();
            (mu * k - root) / (mu * k + root)
        }
        other => {
            return Err(Error::Domain(format!("{other:?} is not a local Fresnel model")));
        }
    };
    Ok(ReflectionPair {
        r_s,
        r_p: -1.0,
        k,
        model,
    })
}

/// Reflection pair for any static model at wave vector `k`.
pub fn static_pair(k: f64, m: &Material, model: StaticModel) -> Result<ReflectionPair> {
    match model {
        StaticModel::Drude | StaticModel::Plasma => fresnel_static(k, m, model),
        StaticModel::PerfectConductor => {
            check_k(k)?;
            Ok(ReflectionPair {
                r_s: 1.0,
                r_p: 1.0,
                k,
                model,
            })
        }
        StaticModel::Nonlocal => Ok(ReflectionPair {
            r_s: r_s_static(m, true),
            r_p: solve_static_p(k, m)?.r_p,
            k,
            model,
        }),
    }
}

/// Amplitudes of the screened p-polarisation problem in `Λ` units.
///
/// Vacuum: `φ = e^{−kζ} + r_p e^{kζ}`. Metal: `φ = t_p h + t_L g` with
/// `h = e^{−kζ}`, `g = e^{−κζ}`, and polarisation
/// `P/ε0 = α(ζ∇h − ẑh) + a∇h + t_L∇g` (times `e^{iKx}`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaticPAmplitudes {
    pub r_p: f64,
    pub t_p: f64,
    pub t_l: f64,
    pub alpha: f64,
    pub a: f64,
}

/// Solution of the static Thomas–Fermi interface problem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StaticPSolution {
    pub r_p: f64,
    /// Charge density just inside the surface [C/m³ per volt of incident
    /// potential], with the sign fixed by Poisson's equation.
    pub rho0: f64,
    pub t_p: f64,
    pub t_l: f64,
    /// Decay constant `√(K² + 1/Λ²)` [1/m].
    pub kappa: f64,
    /// Surface wave vector [1/m].
    pub k: f64,
    /// Thomas–Fermi length [m].
    pub lambda: f64,
    pub amplitudes: StaticPAmplitudes,
}

/// Solves the static p-polarisation problem at wave vector `k` [1/m].
pub fn solve_static_p(k: f64, m: &Material) -> Result<StaticPSolution> {
    check_k(k)?;
    let lambda = m.scales().thomas_fermi_length;
    let amplitudes = static_p_closed_form(k * lambda)?;
    Ok(StaticPSolution {
        r_p: amplitudes.r_p,
        rho0: -CONSTANTS.eps0 * amplitudes.t_l / (lambda * lambda),
        t_p: amplitudes.t_p,
        t_l: amplitudes.t_l,
        kappa: (k * k + 1.0 / (lambda * lambda)).sqrt(),
        k,
        lambda,
        amplitudes,
    })
}

fn kappa_lambda(k_lambda: f64) -> f64 {
    (k_lambda * k_lambda + 1.0).sqrt()
}

/// Closed-form amplitudes with `D = κ² + 2κk + 5k²`:
/// `r_p = (k² − κ²)/D`, `t_p = 4k²/D`, `t_L = 2k(k + κ)/D`.
pub fn static_p_closed_form(k_lambda: f64) -> Result<StaticPAmplitudes> {
    check_k(k_lambda)?;
    let k = k_lambda;
    let q = kappa_lambda(k);
    let d = q * q + 2.0 * q * k + 5.0 * k * k;
    // k² − κ² = −1 exactly
    let r_p = -1.0 / d;
    let t_p = 4.0 * k * k / d;
    let t_l = 2.0 * k * (k + q) / d;
    Ok(StaticPAmplitudes {
        r_p,
        t_p,
        t_l,
        alpha: -t_p / (2.0 * k),
        a: -t_l,
    })
}

/// The same amplitudes from the five boundary and bulk conditions, solved
/// as a linear system: continuity of `φ` and `∂φ/∂ζ`, the bulk screening
/// equation for `P`, and `P_x(0) = P_z(0) = 0`.
pub fn static_p_linear_system(k_lambda: f64) -> Result<StaticPAmplitudes> {
    check_k(k_lambda)?;
    let k = k_lambda;
    let q = kappa_lambda(k);
    // unknowns: r_p, t_p, t_L, α, a
    #[rustfmt::skip]
    let matrix = Matrix5::new(
        1.0, -1.0, -1.0, 0.0, 0.0,
        k, k, q, 0.0, 0.0,
        0.0, 0.5 / k, 0.0, 1.0, 0.0,
        0.0, 0.0, 1.0, 0.0, 1.0,
        0.0, 0.0, -q, -1.0, -k,
    );
    let rhs = Vector5::new(-1.0, k, 0.0, 0.0, 0.0);
    let x = matrix
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular(format!("boundary system at kΛ = {k}")))?;
    Ok(StaticPAmplitudes {
        r_p: x[0],
        t_p: x[1],
        t_l: x[2],
        alpha: x[3],
        a: x[4],
    })
}

impl StaticPSolution {
    pub fn k_lambda(&self) -> f64 {
        self.k * self.lambda
    }

    pub fn kappa_lambda(&self) -> f64 {
        self.kappa * self.lambda
    }

    /// Potential at depth `ζ = z/Λ` per unit incident potential.
    pub fn phi(&self, zeta: f64) -> f64 {
        self.phi_derivative(zeta, 0)
    }

    /// `d^n φ/dζ^n` for `n ≤ 2`, one-sided at `ζ = 0` from the metal.
    pub fn phi_derivative(&self, zeta: f64, n: i32) -> f64 {
        let k = self.k_lambda();
        let q = self.kappa_lambda();
        if zeta < 0.0 {
            (-k).powi(n) * (-k * zeta).exp() + self.r_p * k.powi(n) * (k * zeta).exp()
        } else {
            self.t_p * (-k).powi(n) * (-k * zeta).exp() + self.t_l * (-q).powi(n) * (-q * zeta).exp()
        }
    }

    /// Vacuum-side expression `e^{−kζ} + r_p e^{kζ}`, also usable at `ζ = 0`.
    pub fn phi_vacuum(&self, zeta: f64) -> f64 {
        let k = self.k_lambda();
        (-k * zeta).exp() + self.r_p * (k * zeta).exp()
    }

    /// Vacuum-side limit of `dφ/dζ` at the surface.
    pub fn phi_slope_vacuum(&self) -> f64 {
        let k = self.k_lambda();
        k * (self.r_p - 1.0)
    }

    /// Normal polarisation `P_z` in units of `ε0/Λ` (zero in vacuum).
    pub fn p_normal(&self, zeta: f64) -> f64 {
        if zeta < 0.0 {
            return 0.0;
        }
        let k = self.k_lambda();
        let q = self.kappa_lambda();
        let s = &self.amplitudes;
        let h = (-k * zeta).exp();
        let g = (-q * zeta).exp();
        -s.alpha * (1.0 + k * zeta) * h - k * s.a * h - q * s.t_l * g
    }

    /// Tangential polarisation `P_x` (the factor `i` of `∂_x` removed), in
    /// units of `ε0/Λ`.
    pub fn p_tangential(&self, zeta: f64) -> f64 {
        if zeta < 0.0 {
            return 0.0;
        }
        let k = self.k_lambda();
        let q = self.kappa_lambda();
        let s = &self.amplitudes;
        k * (s.alpha * zeta * (-k * zeta).exp() + s.a * (-k * zeta).exp() + s.t_l * (-q * zeta).exp())
    }

    /// Charge density in units of `ε0/Λ²`.
    pub fn rho(&self, zeta: f64) -> f64 {
        self.rho_derivative(zeta, 0)
    }

    pub fn rho_derivative(&self, zeta: f64, n: i32) -> f64 {
        if zeta < 0.0 {
            return 0.0;
        }
        let q = self.kappa_lambda();
        -self.t_l * (-q).powi(n) * (-q * zeta).exp()
    }

    /// Induced charge per unit area in units of `ε0/Λ`.
    pub fn total_charge(&self) -> f64 {
        -self.t_l / self.kappa_lambda()
    }
}

/// `ρ(0) = (6ε0Ω²/v_F²) K(K + κ)/(κ² + 2κK + 5K²)`, the magnitude of the
/// sub-surface charge; [`StaticPSolution::rho0`] carries the opposite sign.
pub fn rho0_magnitude(k: f64, m: &Material) -> Result<f64> {
    check_k(k)?;
    let s = m.scales();
    let q = (k * k + 1.0 / s.thomas_fermi_length.powi(2)).sqrt();
    let d = q * q + 2.0 * q * k + 5.0 * k * k;
    Ok(6.0 * CONSTANTS.eps0 * (s.omega_p / s.v_f).powi(2) * k * (k + q) / d)
}

/// Alternative `r_p = −(1 − KΛ)/(1 + KΛ)`, consistent with
/// [`solve_static_p`] to first order in `KΛ`.
pub fn r_p_svetovoy(k: f64, m: &Material) -> f64 {
    let x = k * m.scales().thomas_fermi_length;
    -(1.0 - x) / (1.0 + x)
}

/// Landau diamagnetic susceptibility `χ = −Ω²/(4c²k_F²)`.
pub fn landau_susceptibility(m: &Material) -> f64 {
    m.scales().chi_landau
}

/// Inverts `ε_T − ε_L = (q²/ω²)(1/μ0 − 1/μ)` for `χ = μ/μ0 − 1`.
///
/// The permittivities are relative to `ε0`.
pub fn chi_from_permittivities(q: f64, omega: f64, eps_l: Complex64, eps_t: Complex64) -> Result<Complex64> {
    check_k(q)?;
    if omega == 0.0 || !omega.is_finite() {
        return Err(Error::Pole("omega = 0 in the susceptibility bridge"));
    }
    // y = 1 − μ0/μ
    let y = (omega / (q * CONSTANTS.c)).powi(2) * (eps_t - eps_l);
    let one_minus = 1.0 - y;
    if one_minus.norm() < 1e-300 {
        return Err(Error::Singular("mu0/mu vanishes in the susceptibility bridge".into()));
    }
    Ok(y / one_minus)
}

/// Static `r_s`.
///
/// A magnetic material reflects with `(μ − μ0)/(μ + μ0)` whatever its
/// lifetime. For a non-magnetic one a finite lifetime gives `0`; without
/// collisions and with `use_landau` the Landau `χ` gives `χ/(2 + χ)`.
pub fn r_s_static(m: &Material, use_landau: bool) -> f64 {
    if m.is_magnetic() {
        let mu = m.mu_over_mu0;
        return (mu - 1.0) / (mu + 1.0);
    }
    if !m.is_collisionless() || !use_landau {
        return 0.0;
    }
    let chi = landau_susceptibility(m);
    chi / (2.0 + chi)
}
