//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by body construction, quadrature and verification drivers.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported dimension {0}: supported dimensions are 1, 2, 3")]
    UnsupportedDimension(usize),

    #[error("non-finite coordinate encountered")]
    NonFinite,

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("s must lie in (0,1), got {0}")]
    SOutOfRange(f64),

    #[error("split radius {given} is below the required {required} (gauge units)")]
    SplitRadiusTooSmall { given: f64, required: f64 },

    #[error("non-integrable radial profile: {0}")]
    NonIntegrable(String),

    #[error("Monte Carlo sample count must be positive")]
    ZeroSamples,

    #[error("moment norm direction dependence {observed:e} exceeds tolerance {tolerance:e}")]
    DirectionDependence { observed: f64, tolerance: f64 },

    #[error("need at least {min} s-values, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
