//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the library.
///
/// The variants follow the failure classes of the public operations:
/// malformed input, calls outside an operation's domain, requests the
/// element engine cannot serve, misuse of values from different systems,
/// and exhausted search bounds.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScoxError {
    /// Malformed input: asymmetric matrix, bad labels, unparsable text, ...
    #[error("validation error: {0}")]
    Validation(String),
    /// An argument lies outside the operation's domain (e.g. a non-finitary subset).
    #[error("domain error: {0}")]
    Domain(String),
    /// The element engine was asked to work in an infinite Coxeter group.
    #[error("capability error: {0}")]
    Capability(String),
    /// Values were combined incorrectly (different systems, mismatched endpoints, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// `s = w_{Js} t w_{Js}`: the expression `[J+s-t]` is the unique reduced
    /// expression of its coset, so there is no switchback relation.
    #[error("no rotation sequence: the expression [J+s-t] is the unique reduced expression of its coset")]
    NoRotation,
    /// A relation instance does not match the expression it is applied to.
    #[error("stale redex: {0}")]
    StaleRedex(String),
    /// A configured enumeration bound was exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, ScoxError>;
