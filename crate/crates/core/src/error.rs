use thiserror::Error;

/// Error taxonomy shared by every module in this crate.
///
/// `Domain` means the input violates a mathematical precondition (wrong
/// residue class, composite where a prime is required, empty selection...).
/// `Resource` means a guard against runaway computation fired; the message
/// names the limit. `Internal` flags a broken invariant that the underlying
/// theorems guarantee can never fail, so seeing one is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn resource(msg: impl Into<String>) -> Error {
    Error::Resource(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
