use thiserror::Error;

/// Errors raised by the group, building and correspondence routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An enumeration would exceed one of the desk-scale caps.
    #[error("size limit exceeded: {0}")]
    Size(String),
    /// Inputs live over incompatible ground sets or are otherwise out of domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// The operation is only defined for a different family of groups.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A constructed object failed its own structural invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),
    /// A chamber map does not descend to partial flags.
    #[error("structural error: {0}")]
    Structural(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
