use thiserror::Error;

/// Errors raised by the library. Every variant is either a violated
/// precondition (bad input) or a numerical failure; see [`Error::is_numerical`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} exceeds the supported limit {limit}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("{what}: argument {value} is outside the domain ({domain})")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error("{0}")]
    Range(String),
    #[error("insufficient data: need at least {needed} samples, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("eigenvalue {value} at index {index} is outside [-{tol}, 1 + {tol}]; kernel is not good at this discretization")]
    GoodnessViolation { index: usize, value: f64, tol: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of a numerical method (non-convergence, tail bounds
    /// not met) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::GoodnessViolation { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
