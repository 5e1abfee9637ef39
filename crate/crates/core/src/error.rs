use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("polynomial {coeffs:?} is not primitive over GF({q})")]
    NotPrimitive { q: u64, coeffs: Vec<u32> },

    #[error("malformed polynomial: {0}")]
    BadPolynomial(String),

    #[error("field order {order} exceeds the table limit {limit}")]
    TableLimit { order: u128, limit: u64 },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("operands belong to different field contexts")]
    ContextMismatch,

    #[error("element value {value} out of range for GF({q})")]
    ElementRange { value: u64, q: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix does not have full column rank ({rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },

    #[error("linear system is inconsistent")]
    Inconsistent,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what}: r = {r} exceeds the bound {bound}")]
    BoundExceeded { what: String, r: u128, bound: u128 },

    #[error("enumeration size {size} exceeds the cap {cap}")]
    CapExceeded { size: u128, cap: u128 },

    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: u128, size: u128 },

    #[error("cover property fails for members {members:?} (span dimension {dim} < {required})")]
    CoverViolation {
        members: Vec<usize>,
        dim: usize,
        required: usize,
    },

    #[error("completion impossible: rank {rank} + {count} rows < target {target}")]
    CompletionImpossible {
        rank: usize,
        count: usize,
        target: usize,
    },

    #[error("integer overflow computing {0}")]
    Overflow(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
