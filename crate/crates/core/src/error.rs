use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unsupported number of variables {0} (need 2..=10)")]
    BadVariableCount(usize),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("monomials of different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("exponent overflow while computing {0}")]
    ExponentOverflow(String),
    #[error("graded map is not degree compatible at row {row}, column {col}: {detail}")]
    GradedIncompatible {
        row: usize,
        col: usize,
        detail: String,
    },
    #[error("index {value} out of range {range}")]
    OutOfRange { value: i64, range: String },
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("Cech truncation unstable up to bound {0}; a larger bound is needed")]
    CechTruncation(u32),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
