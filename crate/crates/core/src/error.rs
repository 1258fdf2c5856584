use thiserror::Error;

/// Errors raised by the engine. The CLI maps `Resource` to exit code 3 and
/// everything else to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("inhomogeneous polynomial: found monomials of degree {0} and {1}")]
    Inhomogeneous(u64, u64),
    #[error("ideal has infinite colength (generators share a common factor)")]
    InfiniteColength,
    #[error("resource cap exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
