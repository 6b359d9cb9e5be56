use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("capacity exceeded: dimension {requested} exceeds the cap of {cap}")]
    Capacity { requested: usize, cap: usize },

    #[error("permutation budget exceeded: degree {degree} exceeds the cap of {cap}")]
    Budget { degree: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("layout mismatch: {0:?} vs {1:?}")]
    LayoutMismatch(Vec<usize>, Vec<usize>),

    #[error("factor index {index} out of range for {factors} factors")]
    FactorOutOfRange { index: usize, factors: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("not Hermitian (defect {0:e})")]
    NotHermitian(f64),

    #[error("not a permutation: {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid partition: {0:?}")]
    InvalidPartition(Vec<usize>),

    #[error("size mismatch: partition of {partition} vs permutation of degree {permutation}")]
    SizeMismatch {
        partition: usize,
        permutation: usize,
    },

    #[error("{alpha:?} is not obtained from {mu:?} by removing one box")]
    NotABoxRemoval { mu: Vec<usize>, alpha: Vec<usize> },

    #[error("irrep {0:?} has zero multiplicity for local dimension {1}")]
    ZeroMultiplicity(Vec<usize>, usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("map is not trace preserving (defect {0:e})")]
    NotCptp(f64),

    #[error("degenerate outcome: success probability {0:e} below the division guard")]
    DegenerateOutcome(f64),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("counterexample at trial seed {seed}: objective {objective} exceeds {bound}")]
    Counterexample {
        seed: u64,
        objective: f64,
        bound: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
