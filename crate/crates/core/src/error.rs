use thiserror::Error;

/// Errors raised by the arithmetic, series and trace routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {modulus}")]
    NotCoprime { a: i64, modulus: i64 },

    #[error("{0} is not an admissible discriminant here")]
    BadDiscriminant(i64),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(i64),

    #[error("form has zero discriminant")]
    ZeroDiscriminant,

    #[error("pole at s = 1")]
    PoleAtOne,

    #[error("{twist} does not split discriminant {delta}")]
    NotDivisible { twist: i64, delta: i64 },

    #[error("no value coprime to {twist} represented by ({a}, {b}, {c}) within the search box")]
    SearchExhausted { a: i64, b: i64, c: i64, twist: i64 },

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("parameters outside the range of the integral representation: {0}")]
    ParameterOutOfRange(String),

    #[error("modulus {0} is not divisible by 4")]
    BadModulus(i64),

    #[error("series only converges for s > {bound}, got s = {s}")]
    ConvergenceRegion { s: f64, bound: f64 },

    #[error("index {index} violates the plus-space condition for weight {weight}")]
    PlusCondition { weight: f64, index: i64 },

    #[error("method unavailable: {0}")]
    MethodUnavailable(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
