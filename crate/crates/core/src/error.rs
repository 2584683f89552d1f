use thiserror::Error;

/// Errors raised by constructors and operations in this crate.
///
/// Law violations found while checking an action or a frame are reported as
/// data (see [`crate::action::ActionReport`] and [`crate::hilbert::GaloisReport`]),
/// not as errors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported algebra: {0}")]
    UnsupportedAlgebra(String),
    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
