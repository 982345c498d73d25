use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rank {0}: the rank must be at least 1")]
    InvalidRank(usize),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("unrecognized representation: no direct sum of indecomposables matches {0}")]
    Unrecognized(String),

    #[error("enumeration budget of {budget} subspace tuples exceeded")]
    BudgetExceeded { budget: u64 },

    #[error("non-polynomial point count {counts:?} (prime, count)")]
    NonPolynomialCount { counts: Vec<(u64, u64)> },

    #[error("point count requires a counting polynomial of degree >= 2: {counts:?}")]
    HighDegreeCount { counts: Vec<(u64, u64)> },

    #[error("unsupported prime {0}")]
    UnsupportedPrime(u64),

    #[error("need at least two distinct primes for a point-count fit, got {0:?}")]
    TooFewPrimes(Vec<u64>),

    #[error("resolution of {module} undetermined within depth {depth}")]
    Undetermined { module: String, depth: usize },

    #[error("Euler series of ({0}, {1}) has a pole at t = 1")]
    PoleAtOne(String, String),

    #[error("unknown basis label {0}")]
    UnknownLabel(String),

    #[error("not an ideal: [{basis}, {element}] leaves the span")]
    NotAnIdeal { basis: String, element: String },

    #[error("basis element {0} is not a simultaneous eigenvector")]
    NonDiagonal(String),

    #[error("relation failure: {0}")]
    RelationFailure(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
