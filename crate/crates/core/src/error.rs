use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("paths are not nested: {lower} is not weakly below {upper}")]
    NotNested { lower: String, upper: String },
    #[error("index {index} out of range (expected 1..={len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unsupported pattern {0}; expected 132 or 312")]
    UnsupportedPattern(String),
    #[error("{0} contains the pattern 132")]
    NotAvoiding(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend}")]
    InexactDivision { dividend: String, divisor: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
