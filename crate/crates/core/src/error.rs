use thiserror::Error;

/// Crate-wide error type. Variants are shared across modules so that
/// callers can match on one enum regardless of which layer rejected the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("size guard exceeded: {0}")]
    DegenerateSize(String),
    #[error("zero polynomial rejected")]
    ZeroPolynomial,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("constant term is zero")]
    ZeroConstantTerm,
    #[error("zero element has no multiplicative order")]
    ZeroElement,
    #[error("exponent {r} shares a factor with the element order {order}")]
    NonCoprimePower { r: u64, order: u64 },
    #[error("r = {r} is not coprime to the ambient exponent {m}")]
    NonCoprime { r: u64, m: u64 },
    #[error("power map merged two distinct label entries (bug trap)")]
    MergeDetected,
    #[error("degree formula produced a non-integral value (bug trap)")]
    NonIntegralDegree,
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("malformed serialized value: {0}")]
    MalformedValue(String),
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),
    #[error("vector lengths disagree: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("inner product is not rational")]
    NotRational,
    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),
    #[error("odd orthogonal groups require odd q, got q = {0}")]
    EvenCharSOodd(u64),
    #[error("no table row matches the transformed row for {0}")]
    NoMatchingRow(String),
    #[error("closure order {got} does not match the expected order {expected}")]
    OrderMismatch { got: u64, expected: u64 },
    #[error("breadth-first closure exceeded the size guard ({0})")]
    SizeGuard(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
