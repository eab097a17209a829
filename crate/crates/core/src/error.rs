use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is too large for byte-packed rows (at most 251)")]
    PrimeTooLarge(u64),

    #[error("coefficient ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a field; use Rationals for elimination in characteristic zero")]
    NotAField(String),

    #[error("column count mismatch: expected {expected}, got {got}")]
    ColumnMismatch { expected: usize, got: usize },

    #[error("index {index} out of range (limit {limit})")]
    OutOfRange { index: u64, limit: u64 },

    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("relation space at truncation {truncation} is not certified: degree-{truncation} words are not all relations")]
    NotCertified { truncation: usize },

    #[error("budget exceeded: {what}")]
    BudgetExceeded {
        what: String,
        checkpoint: Option<PathBuf>,
    },

    #[error("computation cancelled")]
    Cancelled { checkpoint: Option<PathBuf> },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Checkpoint written before the computation stopped, if any.
    pub fn checkpoint(&self) -> Option<&PathBuf> {
        match self {
            Error::BudgetExceeded { checkpoint, .. } | Error::Cancelled { checkpoint } => {
                checkpoint.as_ref()
            }
            _ => None,
        }
    }
}
