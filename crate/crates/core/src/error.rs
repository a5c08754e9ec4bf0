use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::Rational;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("expected integral entries")]
    NotIntegral,
    #[error("division by zero")]
    DivisionByZero,

    #[error("f_t is reducible over Q for t = {0}")]
    Reducible(Rational),
    #[error("t = 0 has no normal basis (eps, eps^s, eps^s^2); use the isomorphic field at t = -3")]
    ZeroParameter,
    #[error("element has nonzero trace")]
    NonzeroTrace,
    #[error("element is rational")]
    RationalInput,

    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("form is not positive-definite")]
    NotPositiveDefinite,
    #[error("rank {rank} exceeds the supported maximum {max}")]
    RankTooLarge { rank: usize, max: usize },
    #[error("lattices live in different ambient fields")]
    AmbientMismatch,

    #[error("point does not lie on the conic")]
    PointNotOnConic,
    #[error("slope pair (0, 0) is not a slope")]
    ZeroSlopePair,

    #[error("invalid trace target: d + 2e = {0} is not f^2")]
    InvalidTarget(Rational),
    #[error("lambda gives linearly dependent brackets")]
    DegenerateLambda,
    #[error("Gram matrix is not [[2,1,1],[1,2,1],[1,1,2]]")]
    WrongGram,

    #[error("generator is zero")]
    ZeroGenerator,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("{0} exceeds the supported size")]
    TooLarge(u64),
    #[error("cyclotomic index n = {0} must be at least 3")]
    BadCyclotomicIndex(u64),
    #[error("quadratic parameter d must be a positive integer, got {0}")]
    BadQuadraticParameter(i64),
    #[error("cannot parse element expression: {0}")]
    Expression(String),

    #[error("order is not known to be maximal")]
    NotMaximal,
    #[error("no square root of the different found")]
    NotFound,
    #[error("conductor {0} exceeds the search bound")]
    ConductorTooLarge(BigInt),
    #[error("2 does not split completely in this field")]
    TwoInert,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
