use thiserror::Error;

/// Errors raised across the simulator and the measure evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural precondition (such as `r | Q`) does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The input is too large for a dense or brute-force routine.
    #[error("scale error: {0}")]
    Scale(String),

    /// The computation reached a degenerate case with no meaningful result.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
