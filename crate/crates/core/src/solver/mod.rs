//! Constraint propagation over the model, the two-mode sensitivity analysis
//! and the reduction audits that lead to the critical core.

mod audit;
mod paths;
mod propagate;

use std::collections::BTreeSet;

use serde::Serialize;

use crate::model::{ConstraintModel, Context, ContextId, Debt, StateLabel, StateSet, SupportTable};

pub use audit::{
    audit_insensitive, extension_witness, neighbor_assignment_consistent, AuditFinding,
    InsensitiveAudit, NEIGHBOR_UNIVERSE_NOTE,
};
pub use paths::{paths_to_core, render_paths_text, PathWitness};
pub use propagate::{
    compare_supports, initial_candidates, propagate_supports, propagate_with_order,
    pruning_pass, CandidateTable, SupportComparison, SupportDiscrepancy,
};

/// The four contexts every minimal obstruction is confined to.
pub const CRITICAL_CORE: [ContextId; 4] = [0, 2, 14, 24];

/// States a context may take: S1[0]..S7[0] at debt 0, S6[2] at debt 2. The
/// auxiliary S0[2] is never assignable.
pub fn assignable_domain(context: &Context) -> StateSet {
    match context.debt {
        Debt::Zero => StateSet::with_debt(Debt::Zero),
        Debt::Two => StateSet::singleton(StateLabel::S6_2),
    }
}

/// Context ids whose two support sets differ. Ids missing from a table are
/// treated as having an empty set there.
pub fn sensitive_set(supports_a: &SupportTable, supports_b: &SupportTable) -> BTreeSet<ContextId> {
    supports_a
        .entries
        .keys()
        .chain(supports_b.entries.keys())
        .copied()
        .filter(|&id| supports_a.get(id) != supports_b.get(id))
        .collect()
}

pub fn model_sensitive_set(model: &ConstraintModel) -> BTreeSet<ContextId> {
    use crate::model::Mode;
    sensitive_set(model.supports(Mode::A), model.supports(Mode::B))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalCore {
    pub contexts: Vec<ContextId>,
    /// Core members that are not sensitive in the model's bundled tables.
    pub outside_sensitive: Vec<ContextId>,
}

impl CriticalCore {
    pub fn within_sensitive(&self) -> bool {
        self.outside_sensitive.is_empty()
    }
}

pub fn critical_core(model: &ConstraintModel) -> CriticalCore {
    let sensitive = model_sensitive_set(model);
    CriticalCore {
        contexts: CRITICAL_CORE.to_vec(),
        outside_sensitive: CRITICAL_CORE
            .into_iter()
            .filter(|id| !sensitive.contains(id))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, Mode};

    #[test]
    fn domains() {
        let m = builtin_model();
        let d0 = assignable_domain(m.context(0).unwrap());
        assert_eq!(d0.len(), 7);
        assert!(!d0.contains(StateLabel::S6_2));
        let d1 = assignable_domain(m.context(1).unwrap());
        assert_eq!(d1, StateSet::singleton(StateLabel::S6_2));
        for ctx in m.contexts() {
            assert!(!assignable_domain(ctx).contains(StateLabel::S0_2));
        }
    }

    #[test]
    fn builtin_sensitive_set() {
        let m = builtin_model();
        let s = model_sensitive_set(&m);
        assert_eq!(
            s,
            BTreeSet::from([0, 2, 4, 6, 8, 14, 16, 18, 24, 26])
        );
        assert!(s.iter().all(|id| id % 2 == 0));
    }

    #[test]
    fn sensitive_set_of_identical_tables_is_empty() {
        let m = builtin_model();
        let a = m.supports(Mode::A);
        assert!(sensitive_set(a, a).is_empty());
    }

    #[test]
    fn sensitive_set_is_symmetric() {
        let m = builtin_model();
        let (a, b) = (m.supports(Mode::A), m.supports(Mode::B));
        assert_eq!(sensitive_set(a, b), sensitive_set(b, a));
    }

    #[test]
    fn builtin_core() {
        let core = critical_core(&builtin_model());
        assert_eq!(core.contexts, vec![0, 2, 14, 24]);
        assert!(core.within_sensitive());
        let m = builtin_model();
        assert!(core
            .contexts
            .iter()
            .all(|&id| m.context(id).unwrap().debt == Debt::Zero));
    }
}
