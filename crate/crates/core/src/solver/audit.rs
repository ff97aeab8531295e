use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::model_sensitive_set;
use crate::odometer::advance;
use crate::model::{ConstraintModel, ContextId, Mode, StateLabel};

pub const NEIGHBOR_UNIVERSE_NOTE: &str =
    "neighbor values are drawn from the audited mode's bundled supports, not their union";

/// One neighbor assignment around an insensitive context and whether it
/// extends across that context.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditFinding {
    pub context: ContextId,
    pub neighbor_assignment: BTreeMap<ContextId, StateLabel>,
    pub extendable: bool,
    pub witness_state: Option<StateLabel>,
}

impl AuditFinding {
    fn new(
        context: ContextId,
        neighbor_assignment: BTreeMap<ContextId, StateLabel>,
        witness_state: Option<StateLabel>,
    ) -> Self {
        Self {
            context,
            neighbor_assignment,
            extendable: witness_state.is_some(),
            witness_state,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InsensitiveAudit {
    pub mode: Mode,
    pub note: &'static str,
    pub findings: Vec<AuditFinding>,
}

impl InsensitiveAudit {
    pub fn all_extendable(&self) -> bool {
        self.findings.iter().all(|f| f.extendable)
    }

    pub fn non_extendable(&self) -> impl Iterator<Item = &AuditFinding> {
        self.findings.iter().filter(|f| !f.extendable)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("Mode {} insensitive-context audit\n", self.mode);
        let _ = writeln!(out, "note: {}", self.note);
        let mut per_ctx: BTreeMap<ContextId, (usize, usize)> = BTreeMap::new();
        for f in &self.findings {
            let e = per_ctx.entry(f.context).or_default();
            e.0 += 1;
            e.1 += usize::from(f.extendable);
        }
        for (ctx, (total, ok)) in &per_ctx {
            let _ = writeln!(
                out,
                "  ctx {ctx:>2}: {total} neighbor assignments, {ok} extendable, {} not",
                total - ok
            );
        }
        let bad: Vec<&AuditFinding> = self.non_extendable().collect();
        let _ = writeln!(out, "non-extendable: {}", bad.len());
        for f in bad {
            let g: Vec<String> = f
                .neighbor_assignment
                .iter()
                .map(|(id, s)| format!("{id}={s}"))
                .collect();
            let _ = writeln!(out, "  ctx {:>2}: {}", f.context, g.join(", "));
        }
        out
    }
}

/// Whether `assignment` satisfies the relation on every compatibility edge
/// with both endpoints assigned.
pub fn neighbor_assignment_consistent(
    model: &ConstraintModel,
    assignment: &BTreeMap<ContextId, StateLabel>,
) -> bool {
    model.graph().edges().all(|(s, d)| {
        match (assignment.get(&s), assignment.get(&d)) {
            (Some(&x), Some(&y)) => model.relation().contains(x, y),
            _ => true,
        }
    })
}

/// First state (canonical order) in the mode's bundled support of `context`
/// that satisfies every edge joining `context` to an assigned neighbor.
pub fn extension_witness(
    model: &ConstraintModel,
    mode: Mode,
    context: ContextId,
    assignment: &BTreeMap<ContextId, StateLabel>,
) -> Option<StateLabel> {
    let rel = model.relation();
    model.supports(mode).get(context).iter().find(|&s| {
        model.graph().incident_edges(context).all(|(src, dst)| {
            let from = if src == context { Some(s) } else { assignment.get(&src).copied() };
            let to = if dst == context { Some(s) } else { assignment.get(&dst).copied() };
            match (from, to) {
                (Some(x), Some(y)) => rel.contains(x, y),
                _ => true,
            }
        })
    })
}

/// For every insensitive context, enumerates all consistent neighbor
/// assignments drawn from the mode's bundled supports and records whether
/// each extends across the context.
pub fn audit_insensitive(model: &ConstraintModel, mode: Mode) -> InsensitiveAudit {
    let sensitive = model_sensitive_set(model);
    let supports = model.supports(mode);
    let mut findings = Vec::new();

    for ctx in model.context_ids().filter(|id| !sensitive.contains(id)) {
        let neighbors: Vec<ContextId> = model.graph().neighbors(ctx).into_iter().collect();
        let choices: Vec<Vec<StateLabel>> = neighbors
            .iter()
            .map(|&id| supports.get(id).iter().collect())
            .collect();
        if choices.iter().any(Vec::is_empty) {
            continue;
        }

        let radices: Vec<usize> = choices.iter().map(Vec::len).collect();
        let mut digits = vec![0usize; neighbors.len()];
        loop {
            let g: BTreeMap<ContextId, StateLabel> = neighbors
                .iter()
                .zip(&digits)
                .zip(&choices)
                .map(|((&id, &i), c)| (id, c[i]))
                .collect();
            if neighbor_assignment_consistent(model, &g) {
                let w = extension_witness(model, mode, ctx, &g);
                findings.push(AuditFinding::new(ctx, g, w));
            }

            if !advance(&mut digits, &radices) {
                break;
            }
        }
    }

    InsensitiveAudit {
        mode,
        note: NEIGHBOR_UNIVERSE_NOTE,
        findings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::builtin_model;

    fn g(pairs: &[(ContextId, StateLabel)]) -> BTreeMap<ContextId, StateLabel> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn debt_two_contexts_extend_with_s6() {
        let m = builtin_model();
        for mode in Mode::BOTH {
            let audit = audit_insensitive(&m, mode);
            let odd: Vec<&AuditFinding> =
                audit.findings.iter().filter(|f| f.context % 2 == 1).collect();
            assert_eq!(odd.len(), 14);
            for f in odd {
                assert_eq!(f.witness_state, Some(StateLabel::S6_2));
            }
        }
    }

    #[test]
    fn inconsistent_neighbors_rejected() {
        let m = builtin_model();
        let bad = g(&[(6, StateLabel::S1_0), (8, StateLabel::S2_0)]);
        assert!(!neighbor_assignment_consistent(&m, &bad));
        let audit = audit_insensitive(&m, Mode::A);
        assert!(!audit.findings.iter().any(|f| f.context == 10
            && f.neighbor_assignment.get(&6) == Some(&StateLabel::S1_0)
            && f.neighbor_assignment.get(&8) == Some(&StateLabel::S2_0)));
    }

    #[test]
    fn disjoint_successors_block_extension() {
        let m = builtin_model();
        let nb = g(&[
            (6, StateLabel::S6_0),
            (8, StateLabel::S7_0),
            (12, StateLabel::S4_0),
        ]);
        assert!(neighbor_assignment_consistent(&m, &nb));
        assert_eq!(extension_witness(&m, Mode::A, 10, &nb), None);
        let audit = audit_insensitive(&m, Mode::A);
        let f = audit
            .findings
            .iter()
            .find(|f| f.context == 10 && f.neighbor_assignment == nb)
            .expect("enumerated");
        assert!(!f.extendable);
        assert!(!audit.all_extendable());
    }

    #[test]
    fn witnesses_recheck() {
        let m = builtin_model();
        for mode in Mode::BOTH {
            for f in audit_insensitive(&m, mode).findings {
                assert_eq!(f.extendable, f.witness_state.is_some());
                let Some(s) = f.witness_state else { continue };
                let mut full = f.neighbor_assignment.clone();
                full.insert(f.context, s);
                for (a, b) in m.graph().incident_edges(f.context) {
                    assert!(m.relation().contains(full[&a], full[&b]));
                }
                assert!(m.supports(mode).get(f.context).contains(s));
            }
        }
    }

    #[test]
    fn deterministic() {
        let m = builtin_model();
        assert_eq!(audit_insensitive(&m, Mode::B), audit_insensitive(&m, Mode::B));
    }
}
