use thiserror::Error;

use crate::model::ContextId;

/// A malformed line in the model text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, reason: impl Into<String>) -> Self {
        Self {
            line,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A recursive argument dropped below 1. For the builtin recursion this
    /// would be a counterexample to well-definedness.
    #[error("well-definedness violation at n={n}: arguments ({arg1}, {arg2})")]
    WellDefinednessViolation { n: u64, arg1: i64, arg2: i64 },

    #[error("sequence length must be at least {min}, got {got}")]
    SequenceTooShort { min: u64, got: u64 },

    #[error("unknown context {0}")]
    UnknownContext(ContextId),

    #[error("invalid state S{index}[{debt}]")]
    InvalidState { index: u8, debt: u8 },

    #[error("model is inconsistent: {0}")]
    InconsistentModel(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    /// Propagation removed every candidate at this context.
    #[error("empty domain at context {0}")]
    EmptyDomain(ContextId),

    #[error("context {0} cannot reach the critical core")]
    NoPath(ContextId),

    #[error("invalid core subset {0:?}")]
    InvalidSubset(Vec<ContextId>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
