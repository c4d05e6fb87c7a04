use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero map: degree and vanishing order are undefined")]
    ZeroMap,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("not a monomial map")]
    NotMonomial,
    #[error("weight {0} is not the square of a rational")]
    WeightNotSquare(String),
    #[error("negative weight")]
    NegativeWeight,
    #[error("not positive semidefinite")]
    NotPsd,
    #[error("not proper: {0}")]
    NotProper(String),
    #[error("degenerate family: generators are linearly dependent")]
    DegenerateFamily,
    #[error("generator {0} not proper")]
    GeneratorNotProper(usize),
    #[error("empty family")]
    EmptyFamily,
    #[error("non-compact feasible set: generator invariant violated")]
    NonCompact,
    #[error("zero direction")]
    ZeroDirection,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("nothing to split: map is homogeneous")]
    NothingToSplit,
    #[error("not stabilized within cap m <= {0}")]
    NotStabilized(u32),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("point on or outside the unit sphere")]
    OutsideBall,
    #[error("retries exhausted: {0}")]
    RetriesExhausted(String),
    #[error("bound out of domain: {0}")]
    OutOfDomain(String),
    #[error("unknown: {0}")]
    Unknown(String),
}

pub type Result<T> = core::result::Result<T, Error>;
