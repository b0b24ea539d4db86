//! Electromagnetic response of the degenerate electron gas and the
//! zero-frequency term of the thermal Casimir pressure between metal plates.
//!
//! The crate is organised bottom-up:
//!
//! - [`materials`]: physical constants, material presets and the conversion
//!   from laboratory units to the dimensionless Lindhard variables.
//! - [`lindhard`]: collisionless longitudinal and transverse Lindhard
//!   functions, with the real-axis (`+i0`) piecewise forms and the static
//!   expansions.
//! - [`collisional`]: relaxation-time transverse permittivities
//!   (Warren–Ferrell, Conti–Vignale, KM22) and the local Drude/plasma models.
//! - [`reflection`]: static reflection amplitudes, including the nonlocal
//!   Thomas–Fermi p-polarisation problem and Landau diamagnetism.
//! - [`casimir`]: zero'th Matsubara term of the pressure between two
//!   identical thick plates.
//! - [`cli`]: dataset emission behind the `egas` binary.

pub mod casimir;
pub mod cli;
pub mod collisional;
mod error;
pub mod lindhard;
pub mod materials;
pub mod polylog;
pub mod quadrature;
pub mod reflection;

pub use error::{Error, Result};
pub use lindhard::{LindhardPoint, PermittivityModel, Region, RelativePermittivity};
pub use materials::{DerivedScales, Material, PhysicalConstants};
