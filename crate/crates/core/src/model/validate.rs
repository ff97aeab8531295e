use std::collections::BTreeSet;

use serde::Serialize;

use super::state::{Debt, StateLabel, StateSet};
use super::support::Mode;
use super::{ConstraintModel, ContextId};

/// Outcome of one named structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub offenders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
    pub context_count: usize,
    pub edge_count: usize,
    pub relation_size: usize,
    pub component_count: usize,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "contexts: {}\nedges: {}\nrelation pairs: {}\ncomponents: {}\n",
            self.context_count, self.edge_count, self.relation_size, self.component_count
        );
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{status}] {}", c.name));
            if !c.offenders.is_empty() {
                out.push_str(&format!(": {}", c.offenders.join(", ")));
            }
            out.push('\n');
        }
        out.push_str(if self.is_valid() {
            "model valid\n"
        } else {
            "model INVALID\n"
        });
        out
    }
}

fn check(name: &'static str, offenders: Vec<String>) -> CheckResult {
    CheckResult {
        name,
        passed: offenders.is_empty(),
        offenders,
    }
}

/// Runs every structural invariant of the model and reports each check.
pub fn validate_model(model: &ConstraintModel) -> ValidationReport {
    let mut checks = Vec::new();
    let ids: Vec<ContextId> = model.context_ids().collect();

    checks.push(check(
        "context_ids_contiguous",
        ids.iter()
            .enumerate()
            .filter(|&(i, &id)| i != id)
            .map(|(_, id)| id.to_string())
            .collect(),
    ));

    checks.push(check(
        "context_id_parity_matches_debt",
        model
            .contexts()
            .filter(|c| (c.id % 2 == 0) != (c.debt == Debt::Zero))
            .map(|c| c.id.to_string())
            .collect(),
    ));

    checks.push(check(
        "context_debt_pairs",
        model
            .contexts()
            .filter(|c| c.id % 2 == 0)
            .filter_map(|c| {
                let twin = model.context(c.id + 1).ok();
                let ok = twin.is_some_and(|t| t.same_shape(c) && t.debt != c.debt);
                (!ok).then(|| format!("{}/{}", c.id, c.id + 1))
            })
            .collect(),
    ));

    checks.push(check(
        "context_fields_in_range",
        model
            .contexts()
            .filter(|c| !(1..=6).contains(&c.pos) || c.parity > 1)
            .map(|c| c.id.to_string())
            .collect(),
    ));

    let debt_of = |id: ContextId| model.context(id).map(|c| c.debt).ok();
    checks.push(check(
        "psi_debt_preserving",
        model
            .graph()
            .edges()
            .filter(|&(s, d)| debt_of(s) != debt_of(d))
            .map(|(s, d)| format!("{s}->{d}"))
            .collect(),
    ));

    let components = model.graph().components();
    let even: BTreeSet<ContextId> = ids.iter().copied().filter(|i| i % 2 == 0).collect();
    let odd: BTreeSet<ContextId> = ids.iter().copied().filter(|i| i % 2 == 1).collect();
    let expected = vec![even, odd];
    checks.push(check(
        "psi_two_components_even_odd",
        if components == expected {
            Vec::new()
        } else {
            components
                .iter()
                .map(|c| {
                    let ids: Vec<String> = c.iter().map(|i| i.to_string()).collect();
                    format!("{{{}}}", ids.join(","))
                })
                .collect()
        },
    ));

    checks.push(check(
        "relation_has_s1_self_loop",
        if model.relation().contains(StateLabel::S1_0, StateLabel::S1_0) {
            Vec::new()
        } else {
            vec!["S1[0]->S1[0]".to_string()]
        },
    ));

    let mut debt_mismatch = Vec::new();
    let mut aux = Vec::new();
    let mut not_rigid = Vec::new();
    for mode in Mode::BOTH {
        let table = model.supports(mode);
        for ctx in model.contexts() {
            let set = table.get(ctx.id);
            if set.iter().any(|s| s.debt() != ctx.debt) {
                debt_mismatch.push(format!("{mode}:{}", ctx.id));
            }
            if set.contains(StateLabel::S0_2) {
                aux.push(format!("{mode}:{}", ctx.id));
            }
            if ctx.debt == Debt::Two && set != StateSet::singleton(StateLabel::S6_2) {
                not_rigid.push(format!("{mode}:{}", ctx.id));
            }
        }
    }
    checks.push(check("support_debt_matches_context", debt_mismatch));
    checks.push(check("support_excludes_s0", aux));
    checks.push(check("support_debt2_rigid", not_rigid));

    checks.push(check(
        "support_root_pinned",
        Mode::BOTH
            .into_iter()
            .filter(|&m| {
                model.supports(m).get(model.root_id()) != StateSet::singleton(m.root_state())
            })
            .map(|m| m.to_string())
            .collect(),
    ));

    ValidationReport {
        checks,
        context_count: model.context_count(),
        edge_count: model.graph().edge_count(),
        relation_size: model.relation().len(),
        component_count: components.len(),
    }
}
