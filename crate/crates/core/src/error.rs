use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parameter regime violation: {0}")]
    RegimeViolation(String),

    #[error("gamma pole in {context}: argument {arg}")]
    GammaPole { context: String, arg: f64 },

    #[error("integrability violation at column j={j}: {detail}")]
    Integrability { j: usize, detail: String },

    #[error("insufficient data: {0}")]
    Insufficient(String),

    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    QuadratureNonConvergence { achieved: f64, requested: f64 },

    #[error("non-finite integrand value at sample index {index}")]
    NonFiniteIntegrand { index: u64 },

    #[error("invalid partition text '{0}'")]
    PartitionParse(String),

    #[error("unknown check name '{0}'")]
    UnknownCheck(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
