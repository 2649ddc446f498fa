use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic 2 has no odd-prime structure; use the F4 routines")]
    EvenPrime,

    #[error("field context mismatch: {left} vs {right}")]
    CtxMismatch { left: String, right: String },

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("polynomial division by zero")]
    DivisionByZero,

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("total degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("sigma** of an exponent-{0} prime power does not split")]
    NonSplitExponent(u32),

    #[error("cannot factor: {0}")]
    Unfactorable(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
