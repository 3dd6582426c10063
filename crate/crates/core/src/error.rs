use thiserror::Error;

use crate::enumerators::EnumeratorKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} enumerator, got {found}")]
    WrongKind {
        expected: &'static str,
        found: EnumeratorKind,
    },

    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} = {value} outside {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: String,
    },

    #[error("k = {k} exceeds floor(n/2) = {half} for n = {n}")]
    SingletonViolation { n: u32, k: u32, half: u32 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("enumerator is not in the span of the Gleason basis (mismatch at y^{index})")]
    NotInGleasonSpan { index: usize },

    #[error("undecided: pivot budget of {limit} exhausted")]
    Budget { limit: usize },

    #[error("undecided at this precision: sign of f not certified up to {bits} bits")]
    Precision { bits: u32 },

    #[error("malformed input: {0}")]
    Malformed(String),
}
