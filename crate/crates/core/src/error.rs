use thiserror::Error;

/// Errors raised by the library.
///
/// Certificate *verification* never produces an `Error`; failed checks are
/// reported inside a [`crate::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("line {line}: {message}")]
    MatrixParse { line: usize, message: String },

    #[error("malformed certificate: {0}")]
    CertificateParse(String),

    /// A configured cap on elements, pair reductions or enumeration size was hit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("invalid walk: {0}")]
    InvalidWalk(String),

    #[error("invalid circuit matrix: {0}")]
    InvalidCircuit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
