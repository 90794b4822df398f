use thiserror::Error;

/// Errors produced by the classifier and its supporting arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },

    #[error("modulus {modulus} is below the minimum {min}")]
    ModulusTooSmall { modulus: u64, min: u64 },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("not an index-2 subgroup of (Z/{modulus}Z)^x: {reason}")]
    NotIndexTwoSubgroup { modulus: u64, reason: String },

    #[error("the principal character has no first Bernoulli number")]
    PrincipalCharacter,

    #[error("character mod {modulus} is not an odd character of order 2")]
    NotOddQuadratic { modulus: u64 },

    #[error("odd-order classification requires odd f, got {0}")]
    EvenOrder(u64),

    #[error("order {f} outside the supported range 1..={max}")]
    OrderOutOfRange { f: u64, max: u64 },

    #[error("verification work for f = {f} exceeds the budget ({needed} > {budget} coset steps)")]
    WorkBudgetExceeded { f: u64, needed: u128, budget: u128 },

    #[error("oracle mismatch at (m, p) = ({m}, {p}): {detail}")]
    OracleMismatch { m: u64, p: u64, detail: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field size {p}^{degree} exceeds the cap {cap}")]
    FieldTooLarge { p: u64, degree: u32, cap: u64 },

    #[error("{m} does not divide q - 1 = {q_minus_one}")]
    OrderDoesNotDivide { m: u64, q_minus_one: u64 },

    #[error("field tower mismatch: {0}")]
    FieldTowerMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
