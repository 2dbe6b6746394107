use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// `Input` covers malformed arguments and violated preconditions.
/// `Resource` is a refusal by one of the enumeration or output guards in
/// [`Limits`](crate::Limits); raising the guard may let the call succeed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("resource guard: {0}")]
    Resource(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
