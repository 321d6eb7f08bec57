use thiserror::Error;

#[derive(Debug, Error)]
pub enum KmError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("relator index {index} out of range (presentation has {len} relators)")]
    RelatorOutOfRange { index: usize, len: usize },
    #[error("homomorphism `{name}` is not well defined: {violations} relator(s) do not vanish")]
    IllDefined { name: String, violations: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("computation cancelled")]
    Cancelled,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, KmError>;
