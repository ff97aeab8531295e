//! Sequence computation and finite-state verification for the perturbed
//! Hofstadter recursion `Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2)) + (-1)^n`.

mod error;
pub mod model;
mod odometer;
pub mod sequence;
pub mod solver;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use model::{
    builtin_model, validate_model, CompatibilityGraph, ConstraintModel, Context, ContextId, Debt,
    Mode, StateLabel, StateSet, SupportTable, TransitionRelation,
};
pub use sequence::{ScanReport, SequenceEngine, SequenceRecord};
pub use solver::CRITICAL_CORE;
pub use verify::{checkall, Certificate, EdgeScope, SubsetResult};
