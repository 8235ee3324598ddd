use thiserror::Error;

/// Errors surfaced by the link-budget and optimizer operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument was violated (includes dimension
    /// mismatches between phase vectors and channels).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A distance or frequency falls outside the validity range of the
    /// selected path-loss model.
    #[error("out of model range: {0}")]
    OutOfModelRange(String),

    /// A channel entry has exactly zero magnitude, so its phase is
    /// undefined and no alignment exists.
    #[error("degenerate channel: zero-magnitude entry at index {0}")]
    DegenerateChannel(usize),

    /// Per-element hardware costs exceed the configured power budget.
    #[error("power budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
