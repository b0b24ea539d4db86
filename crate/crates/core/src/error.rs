use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation exactly at a pole (typically ω = 0).
    #[error("pole at {0}; use the dedicated static or DC path instead")]
    Pole(&'static str),

    #[error("singular point: {0}")]
    Singular(String),

    /// The collisional models need a finite lifetime.
    #[error("material is collisionless; use the Lindhard functions instead")]
    Collisionless,

    #[error("quadrature did not converge after {subdivisions} subdivisions (partial value {partial:e}, error estimate {error:e})")]
    NonConvergence {
        partial: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("invalid material: {0}")]
    InvalidMaterial(String),

    #[error("config: {0}")]
    Config(String),
}
