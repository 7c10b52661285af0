use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty label")]
    EmptyLabel,

    #[error("duplicate transaction id `{0}`")]
    DuplicateTid(String),

    #[error("transaction `{0}` has no items")]
    EmptyTransaction(String),

    #[error("unknown item ordinal {0}")]
    UnknownItem(u32),

    #[error("invalid support threshold: {0}")]
    InvalidThreshold(String),

    #[error("cannot resolve a fractional support threshold against an empty database")]
    EmptyDatabase,

    #[error("invalid confidence: {0}")]
    InvalidConfidence(String),

    #[error("invalid synthetic spec: {0}")]
    InvalidSpec(String),

    #[error("inconsistent mining result: {0}")]
    Inconsistent(String),
}
