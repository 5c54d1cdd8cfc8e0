use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a1 and a2 must be nonzero (got a1 = {a1}, a2 = {a2})")]
    ZeroCoefficient { a1: i64, a2: i64 },
    #[error("coefficients too large: |a1|, |a2| must not exceed {0}")]
    CoefficientTooLarge(i64),
    #[error("D_u = {0} is a square, so Q(sqrt(D_u)) is not a quadratic field")]
    SquareDiscriminant(i64),
    #[error("degenerate sequence: the ratio of the characteristic roots is a root of unity")]
    Degenerate,
    #[error("field discriminant {0} is not supported (must not be -3 or -4)")]
    UnsupportedDiscriminant(i64),
    #[error("prime {p} divides 2 * a2 * D_u")]
    ExcludedPrime { p: u64 },
    #[error("{0}")]
    InvalidArgument(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("unsupported element: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
