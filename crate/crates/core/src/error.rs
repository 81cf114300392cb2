use thiserror::Error;

/// Errors reported by the library.
///
/// `SizeLimit` guards the exhaustive-enumeration entry points, which scale
/// exponentially in the number of qubits; the caps are chosen so every
/// documented call finishes in seconds on a laptop. `Contract` covers
/// malformed inputs such as dimension mismatches, non-Hermitian operators
/// where Hermitian ones are required, and measurement families that are not
/// projective. `DecompositionMismatch` is raised when a verified operator
/// identity fails to hold numerically, which indicates a bug rather than a
/// recoverable condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("eigensolver did not converge within {0} iterations")]
    IterationLimit(usize),

    #[error("decomposition residual {residual:.3e} exceeds limit {limit:.1e}")]
    DecompositionMismatch { residual: f64, limit: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn size(msg: impl Into<String>) -> Self {
        Error::SizeLimit(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
