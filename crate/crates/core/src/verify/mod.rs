//! Finite verification on the critical core: induced edges, exhaustive
//! subset checks, root disjointness and edge realizability.

mod certificate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::model::{ConstraintModel, ContextId, Edge, Mode, StateLabel, StateSet, TransitionRelation};
use crate::odometer::advance;
use crate::solver::CRITICAL_CORE;

pub use certificate::{checkall, Certificate};

/// Induced core edges in the order the reference checker prints them.
pub const PUBLISHED_CORE_EDGES: [Edge; 3] = [(0, 2), (14, 0), (24, 0)];

/// Which induced edges on the core are enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeScope {
    /// The three edges listed with the reference certificate.
    Published,
    /// The full restriction of the compatibility graph to the core.
    Full,
}

impl EdgeScope {
    pub fn name(self) -> &'static str {
        match self {
            EdgeScope::Published => "published",
            EdgeScope::Full => "full",
        }
    }
}

impl fmt::Display for EdgeScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EdgeScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "published" => Ok(EdgeScope::Published),
            "full" => Ok(EdgeScope::Full),
            other => Err(format!("unknown edge scope `{other}`")),
        }
    }
}

impl Serialize for EdgeScope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Compatibility edges between core contexts.
///
/// `Published` keeps the printed three-edge list (restricted to edges the
/// model actually contains); `Full` is every model edge with both endpoints
/// in the core, in lexicographic order.
pub fn induced_core_edges(model: &ConstraintModel, scope: EdgeScope) -> Vec<Edge> {
    match scope {
        EdgeScope::Published => PUBLISHED_CORE_EDGES
            .into_iter()
            .filter(|&(s, d)| model.graph().contains_edge(s, d))
            .collect(),
        EdgeScope::Full => model
            .graph()
            .edges()
            .filter(|(s, d)| CRITICAL_CORE.contains(s) && CRITICAL_CORE.contains(d))
            .collect(),
    }
}

/// Outcome of checking one non-empty core subset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetResult {
    pub subset: Vec<ContextId>,
    pub mode: Option<Mode>,
    pub assignment: Option<BTreeMap<ContextId, StateLabel>>,
    pub satisfiable: bool,
}

/// Searches mode A, then mode B, for an assignment of the subset drawn
/// from the bundled supports that satisfies every induced edge inside the
/// subset. States are tried in canonical order, last context fastest.
pub fn check_subset(
    model: &ConstraintModel,
    subset: &[ContextId],
    scope: EdgeScope,
) -> Result<SubsetResult> {
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if ids.is_empty() || ids.len() != subset.len() || ids.iter().any(|id| !CRITICAL_CORE.contains(id)) {
        return Err(Error::InvalidSubset(subset.to_vec()));
    }
    let edges: Vec<Edge> = induced_core_edges(model, scope)
        .into_iter()
        .filter(|(s, d)| ids.contains(s) && ids.contains(d))
        .collect();

    for mode in Mode::BOTH {
        if let Some(assignment) = search(model, mode, &ids, &edges) {
            return Ok(SubsetResult {
                subset: ids,
                mode: Some(mode),
                assignment: Some(assignment),
                satisfiable: true,
            });
        }
    }
    Ok(SubsetResult {
        subset: ids,
        mode: None,
        assignment: None,
        satisfiable: false,
    })
}

fn search(
    model: &ConstraintModel,
    mode: Mode,
    ids: &[ContextId],
    edges: &[Edge],
) -> Option<BTreeMap<ContextId, StateLabel>> {
    let choices: Vec<Vec<StateLabel>> = ids
        .iter()
        .map(|&id| model.supports(mode).get(id).iter().collect())
        .collect();
    if choices.iter().any(Vec::is_empty) {
        return None;
    }
    let radices: Vec<usize> = choices.iter().map(Vec::len).collect();
    let mut digits = vec![0; ids.len()];
    loop {
        let assignment: BTreeMap<ContextId, StateLabel> = ids
            .iter()
            .zip(&digits)
            .zip(&choices)
            .map(|((&id, &i), c)| (id, c[i]))
            .collect();
        if edges
            .iter()
            .all(|(s, d)| model.relation().contains(assignment[s], assignment[d]))
        {
            return Some(assignment);
        }
        if !advance(&mut digits, &radices) {
            return None;
        }
    }
}

/// The constant assignment `s` satisfies every edge of `edges` iff the
/// relation has the self-loop `(s, s)` or there are no edges.
pub fn constant_assignment_check(edges: &[Edge], relation: &TransitionRelation, s: StateLabel) -> bool {
    edges.is_empty() || relation.contains(s, s)
}

/// Root supports are exactly {S1[0]} in mode A and {S2[0]} in mode B, and
/// therefore disjoint.
pub fn verify_two_mode_roots(model: &ConstraintModel) -> bool {
    let root = model.root_id();
    let a = model.supports(Mode::A).get(root);
    let b = model.supports(Mode::B).get(root);
    a == StateSet::singleton(Mode::A.root_state())
        && b == StateSet::singleton(Mode::B.root_state())
        && a.is_disjoint(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeRealizability {
    pub edge: Edge,
    pub realizable: bool,
    pub witness: Option<(StateLabel, StateLabel)>,
}

/// For each compatibility edge, whether some pair of supported states is in
/// the relation. The witness is the first such pair in canonical order.
pub fn audit_edge_realizability(model: &ConstraintModel, mode: Mode) -> Vec<EdgeRealizability> {
    let table = model.supports(mode);
    model
        .graph()
        .edges()
        .map(|(s, d)| {
            let witness = table.get(s).iter().find_map(|x| {
                table
                    .get(d)
                    .iter()
                    .find(|&y| model.relation().contains(x, y))
                    .map(|y| (x, y))
            });
            EdgeRealizability {
                edge: (s, d),
                realizable: witness.is_some(),
                witness,
            }
        })
        .collect()
}

pub fn render_realizability_text(mode: Mode, rows: &[EdgeRealizability]) -> String {
    let mut out = format!("Mode {mode} edge realizability:\n");
    for r in rows {
        let (s, d) = r.edge;
        match r.witness {
            Some((x, y)) => out.push_str(&format!("  {s:>2} -> {d:>2} : {x} -> {y}\n")),
            None => out.push_str(&format!("  {s:>2} -> {d:>2} : UNREALIZABLE\n")),
        }
    }
    let bad = rows.iter().filter(|r| !r.realizable).count();
    out.push_str(&format!("unrealizable edges: {bad}\n"));
    out
}
