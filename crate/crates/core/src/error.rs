use thiserror::Error;

/// Errors raised by construction, validation and the numerical operations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid Renyi order {0}: must be > 0")]
    InvalidOrder(f64),

    #[error("order {0} outside the conjugacy domain (alpha > 1/2)")]
    OutOfConjugacyDomain(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("insufficient samples: {got} < {min}")]
    InsufficientSamples { got: usize, min: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
