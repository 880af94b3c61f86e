use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degrees must be positive")]
    DegreeZero,
    #[error("field of cardinality {0}^{1} exceeds the 2^64 limit")]
    FieldTooLarge(u64, usize),
    #[error("layer mismatch: {0}")]
    LayerMismatch(String),
    #[error("tower has no layer of degree {0} over the base field")]
    LayerMissing(usize),
    #[error("objects belong to different field contexts")]
    ContextMismatch,
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("the zero polynomial has no linearized degree")]
    ZeroPolynomial,
    #[error("polynomial is not t-normalized: {0}")]
    NotNormalized(String),
    #[error("cannot normalize: {0}")]
    NotReducible(String),
    #[error("polynomial is not scattered: {0}")]
    NotScattered(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("r = t = {0}: ramification needs distinct degrees")]
    EqualDegrees(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("search incomplete: {0}")]
    SearchIncomplete(String),
    #[error("degenerate code: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
