use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus 1 does not define a coefficient ring")]
    InvalidModulus,

    #[error("coefficient ring mismatch: mod {left} vs mod {right}")]
    RingMismatch { left: u64, right: u64 },

    #[error("cannot parse polynomial `{text}`: {reason}")]
    ParsePoly { text: String, reason: String },

    #[error("cannot parse braid word: {0}")]
    ParseBraid(String),

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: i64, strands: usize },

    #[error("strand index {strand} out of range for {strands} strands")]
    StrandOutOfRange { strand: usize, strands: usize },

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("unsupported strand count {0}: only 3 and 4 strands have a Burau image here")]
    UnsupportedStrands(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("handle reduction exceeded its budget of {0} rewrites")]
    BudgetExceeded(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("certificate rejected: {0}")]
    Certificate(String),

    #[error("search limit exceeded: {0}")]
    SearchLimit(String),
}
