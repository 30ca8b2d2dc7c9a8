use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field order {p}^{n} exceeds the bound {bound}")]
    OrderBound { p: u64, n: u32, bound: u64 },
    #[error("incompatible fields: {0}")]
    FieldMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("theorem violation: {0}")]
    Violation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

pub(crate) fn violation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Violation(msg.into()))
}
