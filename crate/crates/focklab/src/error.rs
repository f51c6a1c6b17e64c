use thiserror::Error;

/// Errors surfaced by constructors and conversions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("malformed Maya window: {0}")]
    MalformedMaya(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("element has a d component; d acts separately")]
    DComponent,

    #[error("not a half-integer: doubled value {0} is even")]
    NotHalfInt(i64),

    #[error("{0}")]
    Invalid(String),
}
