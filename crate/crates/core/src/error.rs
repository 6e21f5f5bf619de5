use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    BadExtensionDegree,
    #[error("field order {0} exceeds the supported cap of 2^16")]
    OrderOverflow(u128),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero in the field")]
    DivisionByZero,
    #[error("element index {index} out of range for field of order {order}")]
    ElementOutOfRange { index: usize, order: usize },
    #[error("graph parse error: {0}")]
    GraphParse(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("edge set is not a spanning tree of the graph")]
    NotSpanningTree,
    #[error("graph must be simple for this operation")]
    NotSimple,
    #[error("labeling parse error: {0}")]
    LabelingParse(String),
    #[error("permutation image is not a bijection")]
    NotBijection,
    #[error("color-set size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("labeling is not identity on the given spanning tree")]
    NotNormalized,
    #[error("coloring is not proper for the labeling")]
    ImproperColoring,
    #[error("anchor (a, b) must satisfy pi(a) != b")]
    BadAnchor,
    #[error("color set too large for the counting engine (max 64)")]
    TooManyColors,
    #[error("step budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("unknown identifier: {0}")]
    Unknown(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
