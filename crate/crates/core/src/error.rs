use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("function undefined at eigenvalue {eigenvalue:e}")]
    SpectralDomain { eigenvalue: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix too ill-conditioned (condition number {condition:e})")]
    Conditioning { condition: f64 },

    #[error("target {value:e} is not reachable for gamma = {gamma:e}")]
    OutOfRange { value: f64, gamma: f64 },

    #[error("order violated: {0}")]
    Order(String),

    #[error("unsupported mean: {0}")]
    UnsupportedMean(String),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
