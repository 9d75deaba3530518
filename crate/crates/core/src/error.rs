use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("entry {value} is out of range for F_{l}")]
    EntryOutOfRange { value: u64, l: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("differentials do not compose to zero at position {0}")]
    NotAComplex(usize),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("coalgebra is not nilpotent")]
    NotNilpotent,
    #[error("degree {requested} exceeds the slice coverage {available}")]
    DegreeTooLarge { requested: usize, available: usize },
    #[error("not (skew-)commutative under this parity: {0}")]
    ParityViolation(String),
    #[error("pool too small for r = {r}: no suitable q in the pool")]
    PoolTooSmall { r: u64 },
    #[error("zero is not allowed here")]
    ZeroRational,
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
