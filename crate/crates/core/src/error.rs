use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coset enumeration exceeded the limit of {limit} cosets")]
    EnumerationLimit { limit: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("character table computation failed: {0}")]
    CharFail(String),

    #[error("geodesic enumeration incomplete: {0}")]
    IncompleteEnumeration(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("enclosure too wide: {0}")]
    PrecisionFail(String),

    #[error("class mismatch: {0}")]
    ClassMismatch(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("permutation action is not transitive")]
    NotTransitive,

    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("incomplete input: {0}")]
    IncompleteInput(String),

    #[error("no feasible value: {0}")]
    Infeasible(String),
}
