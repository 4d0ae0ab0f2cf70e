use thiserror::Error;

use crate::gf::Elt;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("field of order q^2 = {order} exceeds the configured bound {cap}")]
    TooLarge { order: u128, cap: u64 },
    #[error("element index {index} is out of range for a field of order {order}")]
    InvalidElement { index: u64, order: u32 },
    #[error("division by zero")]
    DivisionByZero,

    #[error("duplicate root {0}")]
    DuplicateRoot(Elt),
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(Elt),
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("{count} codewords exceed the enumeration cap {cap}")]
    TooLargeToEnumerate { count: u128, cap: u64 },

    #[error("length {0} is not even")]
    NotEven(usize),
    #[error("evaluation points do not lie in a valid family: {0}")]
    NotInFamily(String),
    #[error("no λ makes every λ·u_i a nonzero element of F_q")]
    NoFeasibleLambda,
    #[error("λ = {lambda} does not put λ·u_{index} in F_q*")]
    InfeasibleLambda { lambda: Elt, index: usize },
    #[error("g(α_{index})·u_{index} = {value} is not in F_q*, no column multiplier exists")]
    NormInfeasible { index: usize, value: Elt },
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("kernel of F_q-dimension {dim} needs {count} combinations, over the cap {cap}")]
    KernelTooLarge { dim: usize, count: u128, cap: u64 },
    #[error("{count} subsets exceed the enumeration cap {cap}")]
    TooManySubsets { count: u128, cap: u64 },
}
