use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QpError {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("radicand {0} is not a square-free integer >= 2")]
    InvalidRadicand(u64),

    #[error("mixed radicals: sqrt({0}) and sqrt({1}) cannot share a field")]
    MixedRadicals(u64, u64),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("frequency matrix columns are rationally dependent (witness {witness:?})")]
    RationallyDependent { witness: Vec<i64> },

    #[error("grid of size {got} is too small, need at least {need}")]
    GridTooSmall { need: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("did not converge: {0}")]
    Convergence(String),

    #[error("empty spectrum")]
    EmptySpectrum,

    #[error("empty window: {0}")]
    EmptyWindow(String),

    #[error("truncation radius {radius} too small: {reason}")]
    InsufficientTruncation { radius: f64, reason: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QpError>;
