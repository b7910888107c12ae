use thiserror::Error;

use crate::degseq::DegreeSequence;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input (negative degree, bad label, bad parameter).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The sequence has no simple-graph realization.
    #[error("sequence {0} is not graphical")]
    NotGraphical(DegreeSequence),

    /// A 2-switch whose removed edges are missing or whose inserted edges already exist.
    #[error("invalid 2-switch: {0}")]
    InvalidMove(String),

    /// A realization-space walk hit one of its caps before finishing.
    #[error("search budget exceeded after {states} states and {moves} moves")]
    BudgetExceeded { states: u64, moves: u64 },

    /// An operation was called outside its documented preconditions.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The same-sequence search visited every realization and none had the
    /// longer cycle. Under valid preconditions this signals a bug.
    #[error("cycle extension exhausted {states} realizations without a C_{target}")]
    ExtensionExhausted { target: usize, states: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
