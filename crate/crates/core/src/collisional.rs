//! Relaxation-time transverse permittivities, local models and conductivities.
//!
//! All permittivities are relative (`ε/ε0`). The conductivity follows from
//! `ε/ε0 = 1 + iσ/(ε0 ω)`, i.e. `σ = −iωε0(ε/ε0 − 1)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::lindhard::{f_transverse, f_transverse_semiclassical, LindhardPoint, PermittivityModel, RelativePermittivity};
use crate::materials::{DerivedScales, Material, CONSTANTS};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Guard for the Conti–Vignale denominator `f_T + 1 − iωτ`.
const CV_DENOMINATOR_FLOOR: f64 = 1e-14;

/// Sign of the `i v_T q/ω` term in the KM22 permittivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Km22Sign {
    /// `1 + i v_T q/ω`, the form as usually printed.
    #[default]
    AsPrinted,
    /// `1 − i v_T q/ω`, which produces negative damping at large `q`.
    Flipped,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LocalModel {
    Drude,
    Plasma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CollisionalModel {
    WarrenFerrell,
    ContiVignale,
}

/// Conductivity `σ` [S/m] and its value in units of `ε0Ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conductivity {
    pub value: Complex64,
    pub normalized: Complex64,
    pub q: Option<f64>,
    pub omega: f64,
    pub model: PermittivityModel,
}

fn collisional_scales(m: &Material) -> Result<DerivedScales> {
    let s = m.scales();
    if s.collisionless {
        return Err(Error::Collisionless);
    }
    Ok(s)
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("wave vector must be positive, got {q}")))
    }
}

fn check_omega(omega: f64) -> Result<()> {
    if omega == 0.0 {
        return Err(Error::Pole("omega = 0; use dc_limit"));
    }
    if !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be finite, got {omega}")));
    }
    Ok(())
}

fn permittivity(value: Complex64, model: PermittivityModel, q: Option<f64>, omega: f64) -> RelativePermittivity {
    RelativePermittivity {
        value,
        model,
        q,
        omega: omega.into(),
    }
}

/// Warren–Ferrell (Boltzmann) form `1 − Ω²/(ωϖ) f_sc(u′)` with
/// `ϖ = ω + i/τ` and `u′ = ϖ/(q v_F)`.
pub fn eps_t_warren_ferrell(q: f64, omega: f64, m: &Material) -> Result<RelativePermittivity> {
    check_q(q)?;
    check_omega(omega)?;
    let s = collisional_scales(m)?;
    let varpi = Complex64::new(omega, 1.0 / s.tau);
    let f = f_transverse_semiclassical(varpi / (q * s.v_f))?;
    let value = 1.0 - s.omega_p * s.omega_p / (omega * varpi) * f;
    Ok(permittivity(value, PermittivityModel::WarrenFerrell, Some(q), omega))
}

/// Conti–Vignale form `1 + (iΩ²τ/ω) f_T/(f_T + 1 − iωτ)` with the quantum
/// `f_T(z, u′)`.
pub fn eps_t_conti_vignale(q: f64, omega: f64, m: &Material) -> Result<RelativePermittivity> {
    check_q(q)?;
    check_omega(omega)?;
    let s = collisional_scales(m)?;
    let f = conti_vignale_kernel(q, omega, &s)?;
    let denominator = f + 1.0 - I * omega * s.tau;
    if denominator.norm() < CV_DENOMINATOR_FLOOR {
        return Err(Error::Singular(format!(
            "Conti-Vignale denominator vanishes at q = {q}, omega = {omega}"
        )));
    }
    let value = 1.0 + I * s.omega_p * s.omega_p * s.tau / omega * f / denominator;
    Ok(permittivity(value, PermittivityModel::ContiVignale, Some(q), omega))
}

fn conti_vignale_kernel(q: f64, omega: f64, s: &DerivedScales) -> Result<Complex64> {
    let u = Complex64::new(omega * s.tau, 1.0) / (q * s.mean_free_path);
    let p = LindhardPoint::new(q / (2.0 * s.k_f), u)?;
    Ok(f_transverse(&p))
}

/// KM22 form `1 + iΩ²τ/(ω(1 + iωτ)) (1 ± i v_T q/ω)`.
///
/// `q = 0` is allowed and reduces the bracket to one.
pub fn eps_t_km22(q: f64, omega: f64, m: &Material, sign: Km22Sign) -> Result<RelativePermittivity> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("wave vector must be non-negative, got {q}")));
    }
    check_omega(omega)?;
    let s = collisional_scales(m)?;
    if s.v_t <= 0.0 {
        return Err(Error::InvalidMaterial("KM22 needs v_T > 0".into()));
    }
    let sign = match sign {
        Km22Sign::AsPrinted => 1.0,
        Km22Sign::Flipped => -1.0,
    };
    let wt = omega * s.tau;
    let bracket = 1.0 + sign * I * s.v_t * q / omega;
    let value = 1.0 + I * s.omega_p * s.omega_p * s.tau / (omega * (1.0 + I * wt)) * bracket;
    Ok(permittivity(value, PermittivityModel::Km22, Some(q), omega))
}

/// Drude `1 − Ω²/(ω(ω + i/τ))` or plasma `1 − Ω²/ω²`.
pub fn eps_local(omega: f64, m: &Material, model: LocalModel) -> Result<RelativePermittivity> {
    check_omega(omega)?;
    let s = m.scales();
    let op2 = s.omega_p * s.omega_p;
    let (value, tag) = match model {
        LocalModel::Plasma => (Complex64::new(1.0 - op2 / (omega * omega), 0.0), PermittivityModel::Plasma),
        LocalModel::Drude => {
            // an infinite τ gives the plasma value through 1/τ = 0
            let varpi = Complex64::new(omega, 1.0 / s.tau);
            (1.0 - op2 / (omega * varpi), PermittivityModel::Drude)
        }
    };
    Ok(permittivity(value, tag, None, omega))
}

/// Two-term low-frequency expansions:
/// Warren–Ferrell `1 + (iΩ²τ/ω)(1 − q²ℓ²/5)`,
/// Conti–Vignale `1 + (iΩ²τ/2ω)(1 − q²ℓ²/10)`.
pub fn low_freq_expansion(q: f64, omega: f64, m: &Material, model: CollisionalModel) -> Result<RelativePermittivity> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("wave vector must be non-negative, got {q}")));
    }
    check_omega(omega)?;
    let s = collisional_scales(m)?;
    let ql2 = (q * s.mean_free_path).powi(2);
    let ohmic = I * s.omega_p * s.omega_p * s.tau / omega;
    let (value, tag) = match model {
        CollisionalModel::WarrenFerrell => (1.0 + ohmic * (1.0 - ql2 / 5.0), PermittivityModel::WarrenFerrell),
        CollisionalModel::ContiVignale => (1.0 + 0.5 * ohmic * (1.0 - ql2 / 10.0), PermittivityModel::ContiVignale),
    };
    Ok(permittivity(value, tag, Some(q), omega))
}

/// `σ = −iωε0(ε/ε0 − 1)` for a permittivity evaluated at real `ω`.
pub fn conductivity_from_eps(e: &RelativePermittivity, m: &Material) -> Result<Conductivity> {
    if e.omega.im != 0.0 {
        return Err(Error::Domain(format!("conductivity needs a real frequency, got {}", e.omega)));
    }
    let omega = e.omega.re;
    check_omega(omega)?;
    let eps0 = CONSTANTS.eps0;
    let value = -I * omega * eps0 * (e.value - 1.0);
    Ok(Conductivity {
        value,
        normalized: value / (eps0 * m.scales().omega_p),
        q: e.q,
        omega,
        model: e.model,
    })
}

/// Exact `ω → 0` conductivity, evaluated without approaching the pole.
///
/// Warren–Ferrell gives `σ0 f_sc(i/qℓ)`, Conti–Vignale `σ0 f/(f + 1)` with
/// `f = f_T(z, i/qℓ)`; at `q = 0` these are `σ0` and `σ0/2`.
pub fn dc_limit(q: f64, m: &Material, model: CollisionalModel) -> Result<Conductivity> {
    if !(q >= 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("wave vector must be non-negative, got {q}")));
    }
    let s = collisional_scales(m)?;
    let u = Complex64::new(0.0, 1.0 / (q * s.mean_free_path));
    let (factor, tag) = match model {
        CollisionalModel::WarrenFerrell => {
            let f = if q == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                f_transverse_semiclassical(u)?
            };
            (f, PermittivityModel::WarrenFerrell)
        }
        CollisionalModel::ContiVignale => {
            let f = if q == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                f_transverse(&LindhardPoint::new(q / (2.0 * s.k_f), u)?)
            };
            (f / (f + 1.0), PermittivityModel::ContiVignale)
        }
    };
    let value = s.dc_conductivity * factor;
    Ok(Conductivity {
        value,
        normalized: value / (CONSTANTS.eps0 * s.omega_p),
        q: Some(q),
        omega: 0.0,
        model: tag,
    })
}
