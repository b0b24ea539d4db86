//! Physical constants, material presets and unit conversion.
//!
//! Everything downstream works with dimensionless groups (`z`, `u`, `Ωτ`,
//! `v_F/c`, `qℓ`, `ωτ`); this module is the only place where SI units enter.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::lindhard::LindhardPoint;
use crate::{Error, Result};

/// CODATA 2018 values in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
    pub k_b: f64,
    pub eps0: f64,
    pub mu0: f64,
    pub m_e: f64,
    pub e: f64,
    pub zeta3: f64,
}

const C: f64 = 299_792_458.0;
const MU0: f64 = 1.256_637_062_12e-6;

/// Shared constant table.
pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    c: C,
    hbar: 1.054_571_817e-34,
    k_b: 1.380_649e-23,
    // fixed by c and μ0 so that c²ε0μ0 = 1 to rounding
    eps0: 1.0 / (MU0 * C * C),
    mu0: MU0,
    m_e: 9.109_383_701_5e-31,
    e: 1.602_176_634e-19,
    zeta3: 1.202_056_903_159_594_3,
};

impl PhysicalConstants {
    /// Bohr magneton `eħ/2m`.
    pub fn bohr_magneton(&self) -> f64 {
        self.e * self.hbar / (2.0 * self.m_e)
    }

    pub fn ev_to_joule(&self, ev: f64) -> f64 {
        ev * self.e
    }
}

/// Room temperature used by the gold and nickel presets.
pub const ROOM_TEMPERATURE_K: f64 = 293.0;

/// Conductor parameters in laboratory units.
///
/// `hbar_over_tau_ev == 0` marks the collisionless electron gas; there is no
/// "large but finite τ" stand-in for it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Material {
    /// `ħΩ` in eV.
    pub plasma_energy_ev: f64,
    pub vf_over_c: f64,
    /// `ħ/τ` in eV, zero for no collisions.
    pub hbar_over_tau_ev: f64,
    pub mu_over_mu0: f64,
    /// Only read by the KM22 permittivity.
    pub vt_over_c: f64,
}

impl Material {
    pub fn new(
        plasma_energy_ev: f64,
        vf_over_c: f64,
        hbar_over_tau_ev: f64,
        mu_over_mu0: f64,
        vt_over_c: f64,
    ) -> Result<Self> {
        let m = Self {
            plasma_energy_ev,
            vf_over_c,
            hbar_over_tau_ev,
            mu_over_mu0,
            vt_over_c,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidMaterial(msg.to_string()));
        if !(self.plasma_energy_ev > 0.0 && self.plasma_energy_ev.is_finite()) {
            return bad("plasma energy must be positive");
        }
        if !(self.vf_over_c > 0.0 && self.vf_over_c < 1.0) {
            return bad("v_F/c must lie in (0, 1)");
        }
        if !(self.hbar_over_tau_ev >= 0.0 && self.hbar_over_tau_ev.is_finite()) {
            return bad("hbar/tau must be finite and non-negative");
        }
        if !(self.mu_over_mu0 > 0.0 && self.mu_over_mu0.is_finite()) {
            return bad("mu/mu0 must be positive");
        }
        if !(self.vt_over_c >= 0.0 && self.vt_over_c < 1.0) {
            return bad("v_T/c must lie in [0, 1)");
        }
        Ok(())
    }

    /// Gold at room temperature: `ħΩ = 9.1 eV`, `c/v_F = 214`,
    /// `ħ/τ = 1.065 k_B T`, `c/v_T = 113`.
    pub fn gold() -> Self {
        let k = CONSTANTS;
        let kt_ev = k.k_b * ROOM_TEMPERATURE_K / k.e;
        Self {
            plasma_energy_ev: 9.1,
            vf_over_c: 1.0 / 214.0,
            hbar_over_tau_ev: 1.065 * kt_ev,
            mu_over_mu0: 1.0,
            vt_over_c: 1.0 / 113.0,
        }
    }

    /// Nickel: `ħΩ = 4.9 eV`, `μ = 110 μ0`. Fermi velocity, lifetime and
    /// `v_T` are not available for this preset and are borrowed from gold;
    /// the static pressure curves do not depend on them.
    pub fn nickel() -> Self {
        Self {
            plasma_energy_ev: 4.9,
            mu_over_mu0: 110.0,
            ..Self::gold()
        }
    }

    /// Collisionless gas with gold's Fermi velocity and `Ω = 0.81 k_F v_F`,
    /// the setting of the Landau-damping maps.
    pub fn landau_map_preset() -> Self {
        let k = CONSTANTS;
        let vf_over_c = 1.0 / 214.0;
        let vf = vf_over_c * k.c;
        // ħΩ = 0.81 ħ k_F v_F = 0.81 m v_F²
        let plasma_energy_ev = 0.81 * k.m_e * vf * vf / k.e;
        Self {
            plasma_energy_ev,
            vf_over_c,
            hbar_over_tau_ev: 0.0,
            mu_over_mu0: 1.0,
            vt_over_c: 1.0 / 113.0,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "gold" => Some(Self::gold()),
            "nickel" => Some(Self::nickel()),
            "fig4" | "landau-map" => Some(Self::landau_map_preset()),
            _ => None,
        }
    }

    pub fn is_collisionless(&self) -> bool {
        self.hbar_over_tau_ev == 0.0
    }

    pub fn collisionless(self) -> Self {
        Self {
            hbar_over_tau_ev: 0.0,
            ..self
        }
    }

    pub fn is_magnetic(&self) -> bool {
        self.mu_over_mu0 != 1.0
    }

    pub fn scales(&self) -> DerivedScales {
        derive_scales(self)
    }
}

/// SI scales derived from a [`Material`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedScales {
    /// Plasma angular frequency Ω [rad/s].
    pub omega_p: f64,
    /// Fermi velocity [m/s].
    pub v_f: f64,
    /// Fermi wave vector `m v_F/ħ` [1/m].
    pub k_f: f64,
    /// Relaxation time [s]; `+inf` when collisionless.
    pub tau: f64,
    /// Thomas–Fermi length `v_F/(√3 Ω)` [m].
    pub thomas_fermi_length: f64,
    /// Mean free path `v_F τ` [m]; `+inf` when collisionless.
    pub mean_free_path: f64,
    /// Reduced plasma wavelength `c/Ω` [m].
    pub plasma_wavelength: f64,
    /// `ε0 Ω² τ` [S/m]; `+inf` when collisionless.
    pub dc_conductivity: f64,
    /// Landau susceptibility `−Ω²/(4c²k_F²)`.
    pub chi_landau: f64,
    /// `v_T` of the KM22 model [m/s].
    pub v_t: f64,
    pub collisionless: bool,
}

impl DerivedScales {
    /// `Ωτ`, infinite for the collisionless gas.
    pub fn omega_tau(&self) -> f64 {
        self.omega_p * self.tau
    }
}

pub fn derive_scales(m: &Material) -> DerivedScales {
    let k = CONSTANTS;
    let omega_p = k.ev_to_joule(m.plasma_energy_ev) / k.hbar;
    let v_f = m.vf_over_c * k.c;
    let k_f = k.m_e * v_f / k.hbar;
    let collisionless = m.is_collisionless();
    let tau = if collisionless {
        f64::INFINITY
    } else {
        k.hbar / k.ev_to_joule(m.hbar_over_tau_ev)
    };
    let plasma_wavelength = k.c / omega_p;
    DerivedScales {
        omega_p,
        v_f,
        k_f,
        tau,
        thomas_fermi_length: v_f / (3f64.sqrt() * omega_p),
        mean_free_path: if collisionless { f64::INFINITY } else { v_f * tau },
        plasma_wavelength,
        dc_conductivity: if collisionless {
            f64::INFINITY
        } else {
            k.eps0 * omega_p * omega_p * tau
        },
        chi_landau: -(omega_p / (k.c * k_f)).powi(2) / 4.0,
        v_t: m.vt_over_c * k.c,
        collisionless,
    }
}

/// Lindhard variables `z = q/2k_F`, `u = ω/(q v_F)`.
///
/// A real `omega` is evaluated on the real axis with the retarded `+i0`
/// prescription.
pub fn lindhard_vars(q: f64, omega: impl Into<Complex64>, m: &Material) -> Result<LindhardPoint> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(Error::Domain(format!("wave vector must be positive, got {q}")));
    }
    let omega = omega.into();
    let s = m.scales();
    let z = q / (2.0 * s.k_f);
    let u = omega / (s.v_f * q);
    LindhardPoint::new(z, u)
}

impl LindhardPoint {
    /// Inverse of [`lindhard_vars`]: `(q, ω)` in SI units.
    pub fn to_physical(&self, m: &Material) -> (f64, Complex64) {
        let s = m.scales();
        let q = 2.0 * s.k_f * self.z;
        (q, self.u * s.v_f * q)
    }
}

/// Material and temperature overrides read from a flat `key = value` file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigOverrides {
    pub plasma_energy_ev: Option<f64>,
    pub vf_over_c: Option<f64>,
    pub hbar_over_tau_ev: Option<f64>,
    pub mu_over_mu0: Option<f64>,
    pub vt_over_c: Option<f64>,
    pub temperature_k: Option<f64>,
}

impl ConfigOverrides {
    /// Parses `key = value` lines. Blank lines and `#` comments are skipped;
    /// unknown or repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Config(format!("line {}: cannot parse value for {key}", lineno + 1))
            })?;
            let slot = match key {
                "plasma_energy_ev" => &mut out.plasma_energy_ev,
                "vf_over_c" => &mut out.vf_over_c,
                "hbar_over_tau_ev" => &mut out.hbar_over_tau_ev,
                "mu_over_mu0" => &mut out.mu_over_mu0,
                "vt_over_c" => &mut out.vt_over_c,
                "temperature_k" => &mut out.temperature_k,
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            };
            if slot.replace(value).is_some() {
                return Err(Error::Config(format!("line {}: duplicate key {key}", lineno + 1)));
            }
        }
        Ok(out)
    }

    pub fn apply(&self, base: Material) -> Result<Material> {
        let m = Material {
            plasma_energy_ev: self.plasma_energy_ev.unwrap_or(base.plasma_energy_ev),
            vf_over_c: self.vf_over_c.unwrap_or(base.vf_over_c),
            hbar_over_tau_ev: self.hbar_over_tau_ev.unwrap_or(base.hbar_over_tau_ev),
            mu_over_mu0: self.mu_over_mu0.unwrap_or(base.mu_over_mu0),
            vt_over_c: self.vt_over_c.unwrap_or(base.vt_over_c),
        };
        m.validate()?;
        Ok(m)
    }
}

/// Landau susceptibility through the density of states,
/// `χ = −(1/3) μ0 μ_B² g(E_F)` with `g(E_F) = 3n0/(2E_F)`.
pub fn chi_landau_from_density_of_states(m: &Material) -> f64 {
    let k = CONSTANTS;
    let s = m.scales();
    let n0 = s.omega_p * s.omega_p * k.eps0 * k.m_e / (k.e * k.e);
    let e_fermi = 0.5 * k.m_e * s.v_f * s.v_f;
    let dos = 3.0 * n0 / (2.0 * e_fermi);
    -k.mu0 * k.bohr_magneton().powi(2) * dos / 3.0
}

/// `ζ(3) k_B T/(4π d³)`: zero-frequency pressure between perfect reflectors.
pub fn perfect_conductor_pressure(d: f64, temperature: f64) -> f64 {
    let k = CONSTANTS;
    k.zeta3 * k.k_b * temperature / (4.0 * PI * d.powi(3))
}
