//! Shared fixtures for the criterion benches.

use hofq_core::model::{builtin_model, ConstraintModel, StateLabel};

/// Sequence lengths measured by the `sequence` bench.
pub const SEQUENCE_SIZES: [u64; 3] = [10_000, 100_000, 1_000_000];

pub fn model() -> ConstraintModel {
    builtin_model()
}

/// Builtin model without the S1[0] self-loop, which forces the subset
/// search past its first candidate.
pub fn model_without_self_loop() -> ConstraintModel {
    let m = builtin_model();
    let mut r = m.relation().clone();
    r.remove(StateLabel::S1_0, StateLabel::S1_0);
    m.with_relation(r)
}
