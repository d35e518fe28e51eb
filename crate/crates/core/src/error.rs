use thiserror::Error;

/// Errors raised by the lattice toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix shape {rows}x{cols} does not match {len} entries")]
    BadShape { rows: usize, cols: usize, len: usize },

    #[error("ambient dimension must be positive")]
    EmptyAmbient,

    #[error("ambient dimension {0} exceeds the supported maximum of 64")]
    AmbientTooLarge(usize),

    #[error("index {index} out of range for ambient dimension {ambient}")]
    IndexOutOfRange { index: usize, ambient: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("vector {0} does not lie in the lattice")]
    NotInLattice(String),

    #[error("lattice is not positive (it meets the nonnegative orthant)")]
    NotPositive,

    #[error("restricted lattice has rank {0}, expected 1")]
    RankNotOne(usize),

    #[error("relation has zero coordinate at index {0}")]
    ZeroPivot(usize),

    #[error("negative entry in exponent vector at index {0}")]
    NegativeEntry(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cone is not a simplex cone")]
    NotSimplex,

    #[error("configuration is not full")]
    NotFull,

    #[error("ambient dimension {0} is too large for an exhaustive subset sweep")]
    SweepTooLarge(usize),

    #[error("random sampling budget of {0} attempts exhausted")]
    SamplingExhausted(usize),

    #[error("invalid instance description: {0}")]
    InvalidInstance(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
