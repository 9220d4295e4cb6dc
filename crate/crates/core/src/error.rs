use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A construction would exceed a configured size cap.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// Malformed input file; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// The given table is not a group table.
    #[error("not a group: {0}")]
    NotAGroup(String),

    /// An argument violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative numeric routine failed to converge.
    #[error("no convergence: {0}")]
    NonConvergence(String),

    /// The class-matrix diagonalization failed for every seed in the schedule.
    #[error("degenerate diagonalization: {0}; retry with a different seed schedule")]
    DegenerateDiagonalization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
