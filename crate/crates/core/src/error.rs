use thiserror::Error;

use crate::poly::Poly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("polynomial extensions may be nested at most two deep")]
    UnsupportedNesting,
    #[error("operands belong to different coefficient rings")]
    MixedContexts,
    #[error("element is not invertible in {ring}")]
    NotInvertible { ring: String },
    #[error("operation requires a field of coefficients")]
    RequiresField,
    #[error("invalid index {0}; indices start at 1")]
    InvalidIndex(usize),
    #[error("division is not exact, remainder {remainder}")]
    InexactDivision { remainder: Poly },
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error(
        "u1 - 1 = {u_side} but q - v1 = {v_side}; no linear quantum addition rule starts this way"
    )]
    InconsistentRule { u_side: Poly, v_side: Poly },
    #[error("index ({m}, {n}) lies outside the tabulated bound {bound}")]
    IndexOutOfBound { m: usize, n: usize, bound: usize },
    #[error("affine weights sum to {sum}, expected 1")]
    AffineSumNotOne { sum: String },
    #[error("expected {expected} weights, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("rule is not in canonical form: {0}")]
    NotCanonical(String),
    #[error("no value of lambda supplied for the prime {0}")]
    MissingPrimeValue(u64),
    #[error("lambda({0}) must be nonzero")]
    ZeroLambda(u64),
    #[error("index range {m} x {n} is too small; both must be at least 2")]
    RangeTooSmall { m: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
