use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated (dimension mismatch,
    /// out-of-range parameter, malformed descriptor, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A point fell outside the domain of validity of a problem.
    #[error("outside domain: {0}")]
    OutsideDomain(String),

    /// The dual solver could not certify optimality at the requested tolerance.
    #[error("solver did not converge: {0}")]
    NotConverged(String),

    /// No admissible Armijo step was found within the backtracking budget.
    #[error("line search failed after {backtracks} backtracks")]
    LinesearchFailed { backtracks: usize },

    /// The operation is defined but deliberately not supported at this size.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn outside(msg: impl Into<String>) -> Self {
        Error::OutsideDomain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
