use thiserror::Error;

/// Errors raised by field arithmetic, linear algebra, code construction and
/// file parsing. Decoding failures are not errors; see
/// [`crate::decoder::FailureReason`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("discrete logarithm of zero")]
    ZeroLog,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("modulus is not primitive; alpha-power notation unavailable")]
    NotPrimitive,
    #[error("no log tables for a field of order {0}")]
    NoTables(u64),
    #[error("digit {digit} out of range for q = {q}")]
    DigitOutOfRange { digit: u32, q: u32 },
    #[error("element code {code} out of range for field of order {order}")]
    CodeOutOfRange { code: u32, order: u32 },
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("operands live in incompatible fields")]
    FieldMismatch,
    #[error("entry with code {0} is not in the base field")]
    NotSubfield(u32),
    #[error("linear system has no solution")]
    Inconsistent,
    #[error("coefficient matrix has rank {rank}, need {needed}")]
    RankDeficient { rank: usize, needed: usize },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("rejection sampling gave up after {0} attempts")]
    SamplingExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
