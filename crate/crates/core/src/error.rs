use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("symmetric tridiagonal eigensolver did not converge for eigenvalue {index} after {iterations} iterations")]
    EigenNonConvergence { index: usize, iterations: usize },

    /// An adaptive integral hit its doubling cap. Carries the partial value.
    #[error("integral diverged or converged too slowly (partial value {partial:e}, last change {error_estimate:e})")]
    DivergedOrSlow { partial: f64, error_estimate: f64 },

    #[error("out of branch: {0}")]
    OutOfBranch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("need at least {needed} usable points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
