use thiserror::Error;

use crate::io::DocumentError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed number `{text}`: {reason}")]
    MalformedNumber { text: String, reason: &'static str },

    #[error("probability {0} is outside the open interval (0, 1)")]
    ProbabilityOutOfRange(String),

    #[error("machine value at {state} is negative ({value})")]
    NegativeMachineValue { state: String, value: String },

    /// An interval endpoint would divide by zero. The message names the
    /// strict assumption whose failure produced the zero denominator.
    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("linear system rows must have 2 coefficients; {kind} row {row} has {found}")]
    Dimension {
        kind: &'static str,
        row: usize,
        found: usize,
    },

    #[error("grid size must be at least 2, got {0}")]
    GridTooSmall(usize),

    #[error("cannot write output: {0}")]
    Output(String),

    #[error(transparent)]
    Document(#[from] DocumentError),
}
