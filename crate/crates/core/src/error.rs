use alloc::string::String;

use crate::gf2::SupportSet;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An exhaustive loop would exceed the configured work budget.
    #[error("work estimate {needed} exceeds the budget of {budget} elementary checks")]
    ResourceLimit { needed: u64, budget: u64 },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// An axis line is not contained in the coordinate index set.
    #[error("axis line through {point} at position {position} is not contained in the index set")]
    Containment { point: String, position: usize },

    #[error("layout error: {0}")]
    Layout(String),

    #[error("invalid repair plan: {0}")]
    PlanInvalid(String),

    /// No coordinate of the residual erasure set has a recovering set
    /// outside the residual.
    #[error("erasures are not sequentially recoverable; stuck on {0:?}")]
    Unrecoverable(SupportSet),

    #[error("decoded word fails the parity check")]
    Inconsistent,

    #[error("no line meets the set in exactly one point")]
    NotFound,

    /// A structural case analysis found no candidate. This contradicts the
    /// construction's recoverability guarantee and indicates a bug or a
    /// malformed input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
