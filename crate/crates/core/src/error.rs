use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid simple type {0}")]
    InvalidType(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("not nilpotent: {0}")]
    NotNilpotent(String),
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("not semisimple: {0}")]
    NotSemisimple(String),
    #[error("type recognition failed: {0}")]
    Recognition(String),
    #[error("random trials exhausted: {0}")]
    RetryExhausted(String),
    #[error("ambiguous orbit identification: {0}")]
    Ambiguous(String),
    #[error("inconsistent computation: {0}")]
    Inconsistent(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("undetermined: {0}")]
    Undetermined(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
