//! Collisionless Lindhard functions of the degenerate electron gas.
//!
//! The permittivities are parametrised as
//!
//! ```text
//! ε_L/ε0 = 1 + (3Ω²/(v_F² q²)) f_L(z, u)
//! ε_T/ε0 = 1 − (Ω²/ω²) f_T(z, u)
//! ```
//!
//! with `z = q/2k_F` and `u = (ω + i0)/(q v_F)`. For real `u` the imaginary
//! parts follow from the branch points of the logarithms and are given in
//! closed piecewise form; for `Im u > 0` the logarithms are evaluated on the
//! principal branch.

mod kernel;

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::materials::{lindhard_vars, Material};
use crate::{Error, Result};


/// Dimensionless point `(z, u)`; `real_axis` marks the `+i0` evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindhardPoint {
    pub z: f64,
    pub u: Complex64,
    pub real_axis: bool,
}

impl LindhardPoint {
    /// Real `u` (zero imaginary part) is taken on the real axis.
    pub fn new(z: f64, u: Complex64) -> Result<Self> {
        if !(z > 0.0 && z.is_finite()) {
            return Err(Error::Domain(format!("z must be positive, got {z}")));
        }
        if !(u.re.is_finite() && u.im.is_finite()) {
            return Err(Error::Domain(format!("u must be finite, got {u}")));
        }
        if u.im < 0.0 {
            return Err(Error::Domain(format!(
                "Im u must be non-negative for the retarded response, got {u}"
            )));
        }
        Ok(Self {
            z,
            u,
            real_axis: u.im == 0.0,
        })
    }

    pub fn real(z: f64, u: f64) -> Result<Self> {
        Self::new(z, Complex64::new(u, 0.0))
    }
}

/// Kinematic region of the real `(z, u)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    /// `u + z < 1`
    PairContinuumLow,
    /// `|u − z| < 1 < u + z`
    PairContinuumEdge,
    /// `|u − z| > 1`: no electron-hole pairs, no absorption.
    Transparent,
}

impl Region {
    pub fn label(&self) -> &'static str {
        match self {
            Region::PairContinuumLow => "low",
            Region::PairContinuumEdge => "edge",
            Region::Transparent => "transparent",
        }
    }

    pub fn absorbs(&self) -> bool {
        !matches!(self, Region::Transparent)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub region: Region,
    /// Set when `u + z = 1` or `|u − z| = 1` exactly; the point then belongs
    /// to the lower of the two adjacent regions.
    pub on_boundary: bool,
}

/// Classifies a real-axis point; `u` is taken by magnitude.
pub fn classify_region(z: f64, u: f64) -> Classification {
    let u = u.abs();
    let sum = u + z;
    let diff = (u - z).abs();
    if sum <= 1.0 {
        Classification {
            region: Region::PairContinuumLow,
            on_boundary: sum == 1.0,
        }
    } else if diff <= 1.0 {
        Classification {
            region: Region::PairContinuumEdge,
            on_boundary: diff == 1.0,
        }
    } else {
        Classification {
            region: Region::Transparent,
            on_boundary: false,
        }
    }
}

fn im_longitudinal_real(z: f64, u: f64) -> f64 {
    let sign = u.signum();
    let u = u.abs();
    let value = match classify_region(z, u).region {
        Region::PairContinuumLow => PI * u / 2.0,
        Region::PairContinuumEdge => PI / (8.0 * z) * (1.0 - (z - u).powi(2)),
        Region::Transparent => 0.0,
    };
    sign * value
}

fn im_transverse_real(z: f64, u: f64) -> f64 {
    let sign = u.signum();
    let u = u.abs();
    let value = match classify_region(z, u).region {
        Region::PairContinuumLow => -0.75 * PI * u * (1.0 - u * u - z * z),
        Region::PairContinuumEdge => -3.0 * PI / (32.0 * z) * (1.0 - (u - z).powi(2)).powi(2),
        Region::Transparent => 0.0,
    };
    sign * value
}

/// Longitudinal Lindhard function `f_L(z, u)`.
pub fn f_longitudinal(p: &LindhardPoint) -> Complex64 {
    if p.real_axis {
        let (re, _) = kernel::evaluate_real(p.z, p.u.re);
        Complex64::new(re, im_longitudinal_real(p.z, p.u.re))
    } else {
        kernel::evaluate(p.z, p.u).longitudinal
    }
}

/// Transverse Lindhard function `f_T(z, u)`.
pub fn f_transverse(p: &LindhardPoint) -> Complex64 {
    if p.real_axis {
        let (_, re) = kernel::evaluate_real(p.z, p.u.re);
        Complex64::new(re, im_transverse_real(p.z, p.u.re))
    } else {
        kernel::evaluate(p.z, p.u).transverse
    }
}

/// Semiclassical (`z → 0`) transverse kernel
/// `3u²/2 − (3u(1 − u²)/4) log((u − 1)/(u + 1))`; real `u` means `u + i0`.
pub fn f_transverse_semiclassical(u: Complex64) -> Result<Complex64> {
    if u.im < 0.0 {
        return Err(Error::Domain(format!("Im u must be non-negative, got {u}")));
    }
    if u.im == 0.0 && u.re.abs() == 1.0 {
        return Err(Error::Singular(format!("u = {}", u.re)));
    }
    Ok(kernel::semiclassical_transverse(u))
}

/// Model that produced a permittivity value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PermittivityModel {
    LindhardL,
    LindhardT,
    LindhardStaticL,
    LindhardStaticT,
    WarrenFerrell,
    ContiVignale,
    Km22,
    Drude,
    Plasma,
}

/// Relative permittivity `ε/ε0` with the inputs that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativePermittivity {
    pub value: Complex64,
    pub model: PermittivityModel,
    /// Wave vector [1/m]; `None` for local models.
    pub q: Option<f64>,
    /// Angular frequency [rad/s].
    pub omega: Complex64,
}

/// `ε_L/ε0 = 1 + (3Ω²/(v_F² q²)) f_L`.
pub fn eps_longitudinal(q: f64, omega: impl Into<Complex64>, m: &Material) -> Result<RelativePermittivity> {
    let omega = omega.into();
    let p = lindhard_vars(q, omega, m)?;
    let s = m.scales();
    let scale = 3.0 * (s.omega_p / (s.v_f * q)).powi(2);
    Ok(RelativePermittivity {
        value: 1.0 + scale * f_longitudinal(&p),
        model: PermittivityModel::LindhardL,
        q: Some(q),
        omega,
    })
}

/// `ε_T/ε0 = 1 − (Ω²/ω²) f_T`.
pub fn eps_transverse(q: f64, omega: impl Into<Complex64>, m: &Material) -> Result<RelativePermittivity> {
    let omega = omega.into();
    if omega == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole("omega = 0 in the transverse permittivity"));
    }
    let p = lindhard_vars(q, omega, m)?;
    let s = m.scales();
    let ratio = s.omega_p * s.omega_p / (omega * omega);
    Ok(RelativePermittivity {
        value: 1.0 - ratio * f_transverse(&p),
        model: PermittivityModel::LindhardT,
        q: Some(q),
        omega,
    })
}

/// Low-frequency (`u → 0`) forms of both permittivities.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticExpansion {
    pub longitudinal: RelativePermittivity,
    /// Fails at `ω = 0`, where `ε_T` has a double pole.
    pub transverse: Result<RelativePermittivity>,
}

/// Truncated `u → 0` expansions, valid for `u ≲ 0.1`:
///
/// ```text
/// ε_L/ε0 = 1 + 3Ω²/(q²v_F²) + 3πiΩ²ω/(2q³v_F³)
/// ε_T/ε0 = 1 − Ω²q²/(4ω²k_F²) + 3πiΩ²/(4ωqv_F)
/// ```
pub fn static_expansion(q: f64, omega: f64, m: &Material) -> Result<StaticExpansion> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("wave vector must be positive, got {q}")));
    }
    let s = m.scales();
    let (op, vf, kf) = (s.omega_p, s.v_f, s.k_f);
    let qv = q * vf;
    let longitudinal = RelativePermittivity {
        value: Complex64::new(
            1.0 + 3.0 * op * op / (qv * qv),
            1.5 * PI * op * op * omega / (qv * qv * qv),
        ),
        model: PermittivityModel::LindhardStaticL,
        q: Some(q),
        omega: omega.into(),
    };
    let transverse = if omega == 0.0 {
        Err(Error::Pole("omega = 0 in the static transverse permittivity"))
    } else {
        Ok(RelativePermittivity {
            value: Complex64::new(
                1.0 - (op * q / (2.0 * omega * kf)).powi(2),
                0.75 * PI * op * op / (omega * qv),
            ),
            model: PermittivityModel::LindhardStaticT,
            q: Some(q),
            omega: omega.into(),
        })
    };
    Ok(StaticExpansion {
        longitudinal,
        transverse,
    })
}
