use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::{check_subset, induced_core_edges, EdgeScope, SubsetResult, PUBLISHED_CORE_EDGES};
use crate::error::Result;
use crate::model::{CompatibilityGraph, ConstraintModel, Context, ContextId, Edge, Mode, StateSet};
use crate::solver::CRITICAL_CORE;

const RULE: &str = "========================================";
const DASHES: &str = "----------------------------------------";
const TITLE: &str = "Critical-core checker for the critical-core verification";
const VERIFIED_LINE: &str = "VERIFIED: no simultaneous obstruction on the critical core.";
const FAILED_LINE: &str = "NOT VERIFIED: some core subset admits no valid assignment.";

/// Everything needed to re-check the finite verification independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub core_contexts: Vec<Context>,
    pub supports: BTreeMap<Mode, BTreeMap<ContextId, StateSet>>,
    pub induced_edges: Vec<Edge>,
    pub edge_scope: EdgeScope,
    pub results: Vec<SubsetResult>,
    pub verified: bool,
    pub notes: Vec<String>,
}

/// Core subsets in binary-counting order: bit `i` selects `CRITICAL_CORE[i]`.
pub(crate) fn core_subsets() -> Vec<Vec<ContextId>> {
    (1u32..16)
        .map(|mask| {
            CRITICAL_CORE
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &id)| id)
                .collect()
        })
        .collect()
}

/// Checks all fifteen non-empty core subsets and assembles the certificate.
pub fn checkall(model: &ConstraintModel, scope: EdgeScope) -> Result<Certificate> {
    let core_contexts = CRITICAL_CORE
        .iter()
        .map(|&id| model.context(id).cloned())
        .collect::<Result<Vec<_>>>()?;
    let supports = Mode::BOTH
        .into_iter()
        .map(|mode| {
            let table = model.supports(mode);
            let rows = CRITICAL_CORE.iter().map(|&id| (id, table.get(id))).collect();
            (mode, rows)
        })
        .collect();
    let induced_edges = induced_core_edges(model, scope);
    let results = core_subsets()
        .iter()
        .map(|subset| check_subset(model, subset, scope))
        .collect::<Result<Vec<_>>>()?;
    let verified = results.iter().all(|r| r.satisfiable);

    let mut notes = Vec::new();
    match scope {
        EdgeScope::Published => {
            for (s, d) in PUBLISHED_CORE_EDGES {
                if !induced_edges.contains(&(s, d)) {
                    notes.push(format!("listed core edge {s} -> {d} is absent from the model"));
                }
            }
        }
        EdgeScope::Full => {
            let mut g = CompatibilityGraph::new(CRITICAL_CORE);
            for &(s, d) in &induced_edges {
                g.insert_edge(s, d);
            }
            if g.has_cycle() {
                let two_cycles: Vec<String> = induced_edges
                    .iter()
                    .filter(|&&(s, d)| s < d && g.contains_edge(d, s))
                    .map(|(s, d)| format!("{s} <-> {d}"))
                    .collect();
                let mut note = "induced core graph is cyclic".to_string();
                if !two_cycles.is_empty() {
                    let _ = write!(note, " ({})", two_cycles.join(", "));
                }
                notes.push(note);
            }
        }
    }

    Ok(Certificate {
        core_contexts,
        supports,
        induced_edges,
        edge_scope: scope,
        results,
        verified,
        notes,
    })
}

fn id_list(ids: &[ContextId], sep: &str, f: impl Fn(ContextId) -> String) -> String {
    ids.iter().map(|&id| f(id)).collect::<Vec<_>>().join(sep)
}

impl Certificate {
    /// Plain-text rendering. With the published scope on the bundled model
    /// this is the reference checker output byte for byte.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{RULE}\n{TITLE}\n{RULE}\n");

        out.push_str("Core contexts:\n");
        for c in &self.core_contexts {
            let _ = writeln!(out, "{:>4} : {c}", c.id);
        }
        out.push('\n');

        for (mode, rows) in &self.supports {
            let _ = writeln!(out, "Mode {mode} supports:");
            for (id, set) in rows {
                let _ = writeln!(out, "{id:>4} : {}", set.to_spaced());
            }
            out.push('\n');
        }

        out.push_str("Induced CORE_PSI edges:\n");
        for (s, d) in &self.induced_edges {
            let _ = writeln!(out, "  lambda_{s} -> lambda_{d}");
        }
        if self.edge_scope != EdgeScope::Published {
            let _ = writeln!(out, "  (edge scope: {})", self.edge_scope);
        }
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out.push('\n');

        let _ = writeln!(out, "Checking all {} nonempty subsets...\n", self.results.len());
        let _ = writeln!(out, "LaTeX rows:\n{DASHES}");
        for r in &self.results {
            let braces = id_list(&r.subset, ",", |id| id.to_string());
            let lambdas = id_list(&r.subset, ",", |id| format!("\\lambda_{id}"));
            match (&r.mode, &r.assignment) {
                (Some(mode), Some(assignment)) => {
                    let named = id_list(&r.subset, ", ", |id| format!("lambda_{id}={}", assignment[&id]));
                    let tuple = id_list(&r.subset, ", ", |id| assignment[&id].to_string());
                    let _ = writeln!(out, "H = {{{braces}}} -> mode {mode} -> {named}");
                    let _ = writeln!(out, "$\\{{{lambdas}\\}}$ & ${mode}$ & $({tuple})$ \\\\");
                }
                _ => {
                    let _ = writeln!(out, "H = {{{braces}}} -> no valid assignment");
                    let _ = writeln!(out, "$\\{{{lambdas}\\}}$ & -- & -- \\\\");
                }
            }
        }
        out.push('\n');
        out.push_str(if self.verified { VERIFIED_LINE } else { FAILED_LINE });
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Subsets (as sorted id lists) for which no assignment was found.
    pub fn failures(&self) -> Vec<&[ContextId]> {
        self.results
            .iter()
            .filter(|r| !r.satisfiable)
            .map(|r| r.subset.as_slice())
            .collect()
    }

    pub fn subset_ids(&self) -> BTreeSet<Vec<ContextId>> {
        self.results.iter().map(|r| r.subset.clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, StateLabel};

    #[test]
    fn subset_order() {
        let subsets = core_subsets();
        assert_eq!(subsets.len(), 15);
        assert_eq!(subsets[0], vec![0]);
        assert_eq!(subsets[1], vec![2]);
        assert_eq!(subsets[2], vec![0, 2]);
        assert_eq!(subsets[3], vec![14]);
        assert_eq!(subsets[7], vec![24]);
        assert_eq!(subsets[14], vec![0, 2, 14, 24]);
    }

    #[test]
    fn builtin_verifies_in_both_scopes() {
        let m = builtin_model();
        for scope in [EdgeScope::Published, EdgeScope::Full] {
            let c = checkall(&m, scope).unwrap();
            assert!(c.verified);
            for r in &c.results {
                assert_eq!(r.mode, Some(Mode::A));
                let a = r.assignment.as_ref().unwrap();
                assert_eq!(a.keys().copied().collect::<Vec<_>>(), r.subset);
                assert!(a.values().all(|&s| s == StateLabel::S1_0));
            }
        }
    }

    #[test]
    fn full_scope_notes_cycle() {
        let m = builtin_model();
        let c = checkall(&m, EdgeScope::Full).unwrap();
        assert_eq!(c.induced_edges.len(), 6);
        assert_eq!(c.notes, vec!["induced core graph is cyclic (0 <-> 2)".to_string()]);
        let text = c.to_text();
        assert!(text.contains("(edge scope: full)"));
        assert!(text.contains("note: induced core graph is cyclic"));
        assert!(checkall(&m, EdgeScope::Published).unwrap().notes.is_empty());
    }

    #[test]
    fn removing_self_loop_changes_outcome() {
        let m = builtin_model();
        let mut r = m.relation().clone();
        r.remove(StateLabel::S1_0, StateLabel::S1_0);
        let m2 = m.with_relation(r);
        let c = checkall(&m2, EdgeScope::Published).unwrap();
        let baseline = checkall(&m, EdgeScope::Published).unwrap();
        assert_ne!(c.results, baseline.results);
        // without the loop, S1[0] at the root is followed by S4[0] at 2
        let r02 = &c.results[2];
        assert_eq!(r02.subset, vec![0, 2]);
        assert_eq!(r02.mode, Some(Mode::A));
        assert_eq!(r02.assignment.as_ref().unwrap()[&2], StateLabel::S4_0);
        assert!(c.verified);
        for r in &c.results {
            assert_eq!(r.mode, Some(Mode::A));
        }
        assert_eq!(c.verified, c.failures().is_empty());
        let text = c.to_text();
        assert_eq!(text.ends_with(&format!("{VERIFIED_LINE}\n")), c.verified);
    }

    #[test]
    fn unsatisfiable_subset_rendered() {
        let m = builtin_model();
        let mut r = m.relation().clone();
        for (a, b) in m.relation().pairs().collect::<Vec<_>>() {
            if b == StateLabel::S1_0 || b == StateLabel::S2_0 {
                r.remove(a, b);
            }
        }
        let c = checkall(&m.with_relation(r), EdgeScope::Published).unwrap();
        assert!(!c.verified);
        assert!(c.failures().contains(&&[0, 14][..]));
        let text = c.to_text();
        assert!(text.contains("H = {0,14} -> no valid assignment\n"));
        assert!(text.ends_with(&format!("{FAILED_LINE}\n")));
    }

    #[test]
    fn json_fields() {
        let c = checkall(&builtin_model(), EdgeScope::Published).unwrap();
        let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
        for key in ["core_contexts", "supports", "induced_edges", "edge_scope", "results", "verified"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["edge_scope"], "published");
        assert_eq!(v["results"].as_array().unwrap().len(), 15);
        assert_eq!(v["results"][14]["assignment"]["24"], "S1[0]");
        assert_eq!(v["supports"]["B"]["0"][0], "S2[0]");
        assert_eq!(v["induced_edges"][1], serde_json::json!([14, 0]));
    }
}
