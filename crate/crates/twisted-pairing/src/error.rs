use crate::field::Field;

/// Errors raised by constructors and checked operations.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("not a cocycle: {0}")]
    NotCocycle(String),
    #[error("missing data: {0}")]
    Missing(String),
    #[error("axiom failure: {0}")]
    Axiom(String),
    #[error("identity defect: {0}")]
    Defect(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
