//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by construction, parsing and analysis routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} tokens, found {found}")]
    TokenCount { expected: usize, found: usize },
    #[error("invalid token `{0}`")]
    BadToken(String),
    #[error("image {value} out of range 1..={n}")]
    OutOfRange { value: usize, n: usize },
    #[error("undefined entry at point {0} in a full transformation")]
    UndefinedInFull(usize),
    #[error("image {0} repeated in an injective transformation")]
    DuplicateImage(usize),
    #[error("full transformations need nonempty ground sets")]
    EmptyGroundSet,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{size} elements exceed the enumeration cap {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("search budget exhausted; rank lies in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize },
    #[error("element is not regular")]
    NotRegular,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
