use thiserror::Error;

/// Errors raised by the exact-arithmetic operations.
///
/// Every operation is total on its stated domain; these variants cover the
/// documented ways of leaving it.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A numeric argument left its domain (e.g. a parameter outside `[0,1]`,
    /// an interval endpoint outside `[0,1]`, an image escaping `[0,1)`).
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural invariant of an input value is violated (non-nested
    /// chain, classes that fail to partition `[0,1)`, ...).
    #[error("invariant violation: {0}")]
    Invariant(String),

    /// Arities or dimensions of the arguments do not match.
    #[error("arity mismatch: {0}")]
    Arity(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub(crate) fn arity(msg: impl Into<String>) -> Self {
        Error::Arity(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
