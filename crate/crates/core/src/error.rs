//! Error type shared by all solver modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed data: out-of-range vertices, inconsistent dimensions,
    /// unparsable encodings.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A stated precondition of an operation does not hold. The message
    /// names the failing condition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The wall-clock budget ran out before the search finished. The
    /// message carries the best bounds or partial verdict found so far.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The instance exceeds the configured exact-search size budget.
    #[error("instance too large for exact search: {0}")]
    TooLarge(String),

    /// A condition that should be impossible by construction failed. This
    /// is an alarm, not an input problem.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
