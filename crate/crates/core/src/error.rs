use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised at the library boundary.
///
/// Every variant is a domain or budget violation; none of them is a bug in
/// the caller's arithmetic, so the CLI maps all of them to exit code 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("argument must be positive and finite, got {0}")]
    InvalidArgument(f64),
    #[error("{name} must be at least {min}, got {value}")]
    IndexTooSmall {
        name: &'static str,
        min: u64,
        value: u64,
    },
    #[error("exact product needs about {needed} decimal digits, budget is {budget}")]
    DigitBudgetExceeded { needed: u64, budget: u64 },
    #[error("quadrature did not converge within {evaluations} evaluations (error estimate {error:e})")]
    NonConvergence { evaluations: usize, error: f64 },
    #[error("k values must form a doubling ladder")]
    NonGeometricLadder,
    #[error("invalid sample: {0}")]
    InvalidSample(&'static str),
    #[error("invalid Monte Carlo config: {0}")]
    InvalidConfig(&'static str),
    #[error("Monte Carlo run needs {needed} bytes of accumulator state, budget is {budget}")]
    MemoryBudget { needed: usize, budget: usize },
}
