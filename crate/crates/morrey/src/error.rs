use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("duplicate lattice point {point}")]
    DuplicatePoint { point: String },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("exact mode requires positive integer p and q (got p = {p}, q = {q})")]
    NonIntegerExponents { p: String, q: String },

    #[error("exact mode requires rational entries, found a float entry at {point}")]
    FloatEntryInExactMode { point: String },

    #[error("norm value carries no exact certificate")]
    FloatOnlyCertificate,

    #[error("invalid spacing j = {j}: {reason}")]
    InvalidSpacing { j: u64, reason: String },

    #[error("member {index} is the zero sequence")]
    ZeroMember { index: usize },

    #[error("member {index} is not unit-norm")]
    NonUnitMember { index: usize },

    #[error("sign combination has length {got}, expected {expected}")]
    ComboLength { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("input exceeds the configured size limit: {0}")]
    LimitExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
