use thiserror::Error;

/// Crate-wide error type. Variants are grouped by how the CLI reports them:
/// `Parameter`/`Parse`/`Io` are usage problems, `Resource` is a refused
/// oversized instance, everything else is a domain failure.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An instance exceeded a hard scale guard. `limit` names the guard so
    /// callers can tell a refusal from an infeasibility.
    #[error("resource limit exceeded: {limit} (got {actual})")]
    Resource { limit: String, actual: String },

    /// Exhaustive search proved the requested object does not exist.
    #[error("object does not exist: {0}")]
    Existence(String),

    /// Parameters fail a divisibility/admissibility condition.
    #[error("not admissible: {0}")]
    Admissibility(String),

    /// An input object violates a structural clause; the message names it.
    #[error("structure violation: {0}")]
    Structure(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// Post-condition that cannot fail unless the code is wrong.
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
