use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::assignable_domain;
use crate::error::{Error, Result};
use crate::model::{ConstraintModel, ContextId, Mode, RelationIndex, StateSet, SupportTable};

/// Candidate sets during (and after) arc-consistency propagation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateTable {
    pub mode: Mode,
    pub entries: BTreeMap<ContextId, StateSet>,
    pub converged: bool,
}

impl CandidateTable {
    pub fn get(&self, id: ContextId) -> StateSet {
        self.entries.get(&id).copied().unwrap_or_default()
    }
}

/// Out- and in-neighbors per context, built once per propagation run.
struct Adjacency {
    out: BTreeMap<ContextId, Vec<ContextId>>,
    inc: BTreeMap<ContextId, Vec<ContextId>>,
}

impl Adjacency {
    fn new(model: &ConstraintModel) -> Self {
        let mut out: BTreeMap<ContextId, Vec<ContextId>> =
            model.context_ids().map(|id| (id, Vec::new())).collect();
        let mut inc = out.clone();
        for (s, d) in model.graph().edges() {
            out.entry(s).or_default().push(d);
            inc.entry(d).or_default().push(s);
        }
        Self { out, inc }
    }

    fn touching(&self, id: ContextId) -> impl Iterator<Item = ContextId> + '_ {
        self.out[&id].iter().chain(self.inc[&id].iter()).copied()
    }
}

/// Supported subset of `entries[id]`: a state survives if every outgoing
/// edge has a compatible successor candidate and every incoming edge a
/// compatible predecessor candidate.
fn revise(
    adj: &Adjacency,
    rel: &RelationIndex,
    entries: &BTreeMap<ContextId, StateSet>,
    id: ContextId,
) -> StateSet {
    entries[&id]
        .iter()
        .filter(|&s| {
            adj.out[&id]
                .iter()
                .all(|mu| !rel.succ(s).is_disjoint(entries[mu]))
                && adj.inc[&id]
                    .iter()
                    .all(|nu| !rel.pred(s).is_disjoint(entries[nu]))
        })
        .collect()
}

/// Assignable domains with the root pinned to the mode's root state.
pub fn initial_candidates(model: &ConstraintModel, mode: Mode) -> CandidateTable {
    let mut entries: BTreeMap<ContextId, StateSet> = model
        .contexts()
        .map(|c| (c.id, assignable_domain(c)))
        .collect();
    if let Some(root) = entries.get_mut(&model.root_id()) {
        *root = root.intersection(StateSet::singleton(mode.root_state()));
    }
    CandidateTable {
        mode,
        entries,
        converged: false,
    }
}

/// One simultaneous revision of every context against the current table.
/// A converged table is a fixed point of this step.
pub fn pruning_pass(model: &ConstraintModel, table: &CandidateTable) -> CandidateTable {
    let adj = Adjacency::new(model);
    let rel = RelationIndex::new(model.relation());
    let entries = table
        .entries
        .keys()
        .map(|&id| (id, revise(&adj, &rel, &table.entries, id)))
        .collect();
    CandidateTable {
        mode: table.mode,
        entries,
        converged: table.converged,
    }
}

/// Arc consistency to a fixed point, starting the work list in ascending id
/// order.
pub fn propagate_supports(model: &ConstraintModel, mode: Mode) -> Result<CandidateTable> {
    let order: Vec<ContextId> = model.context_ids().collect();
    propagate_with_order(model, mode, &order)
}

/// Same as [`propagate_supports`] with an explicit initial work-list order.
/// Ids absent from `order` are appended in ascending order. The fixed point
/// does not depend on the order.
pub fn propagate_with_order(
    model: &ConstraintModel,
    mode: Mode,
    order: &[ContextId],
) -> Result<CandidateTable> {
    let adj = Adjacency::new(model);
    let rel = RelationIndex::new(model.relation());
    let mut table = initial_candidates(model, mode);

    if let Some((&id, _)) = table.entries.iter().find(|(_, s)| s.is_empty()) {
        return Err(Error::EmptyDomain(id));
    }

    let mut queue: VecDeque<ContextId> = VecDeque::new();
    let mut queued: BTreeSet<ContextId> = BTreeSet::new();
    for id in order
        .iter()
        .copied()
        .chain(model.context_ids())
        .filter(|id| table.entries.contains_key(id))
    {
        if queued.insert(id) {
            queue.push_back(id);
        }
    }

    while let Some(id) = queue.pop_front() {
        queued.remove(&id);
        let revised = revise(&adj, &rel, &table.entries, id);
        if revised == table.entries[&id] {
            continue;
        }
        if revised.is_empty() {
            return Err(Error::EmptyDomain(id));
        }
        table.entries.insert(id, revised);
        for nb in adj.touching(id) {
            if queued.insert(nb) {
                queue.push_back(nb);
            }
        }
    }
    table.converged = true;
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportDiscrepancy {
    pub context: ContextId,
    pub computed_only: StateSet,
    pub bundled_only: StateSet,
}

/// Row-by-row difference between a computed table and a bundled one. No
/// discrepancies means exact agreement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportComparison {
    pub mode: Mode,
    pub discrepancies: Vec<SupportDiscrepancy>,
}

impl SupportComparison {
    pub fn is_exact(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn for_context(&self, id: ContextId) -> Option<&SupportDiscrepancy> {
        self.discrepancies.iter().find(|d| d.context == id)
    }

    pub fn to_text(&self, computed: &CandidateTable, bundled: &SupportTable) -> String {
        let mut out = format!("Mode {} supports (computed vs bundled):\n", self.mode);
        let ids: BTreeSet<ContextId> = computed
            .entries
            .keys()
            .chain(bundled.entries.keys())
            .copied()
            .collect();
        for id in ids {
            let mark = if self.for_context(id).is_some() { "!=" } else { "==" };
            let _ = writeln!(
                out,
                "  {id:>2} : {} {mark} {}",
                computed.get(id).to_spaced(),
                bundled.get(id).to_spaced()
            );
        }
        let _ = writeln!(out, "discrepancies: {}", self.discrepancies.len());
        for d in &self.discrepancies {
            let _ = writeln!(
                out,
                "  ctx {:>2}: computed only [{}], bundled only [{}]",
                d.context,
                d.computed_only.to_spaced(),
                d.bundled_only.to_spaced()
            );
        }
        out
    }
}

pub fn compare_supports(computed: &CandidateTable, bundled: &SupportTable) -> SupportComparison {
    let ids: BTreeSet<ContextId> = computed
        .entries
        .keys()
        .chain(bundled.entries.keys())
        .copied()
        .collect();
    let discrepancies = ids
        .into_iter()
        .filter_map(|id| {
            let (c, b) = (computed.get(id), bundled.get(id));
            (c != b).then(|| SupportDiscrepancy {
                context: id,
                computed_only: c.difference(b),
                bundled_only: b.difference(c),
            })
        })
        .collect();
    SupportComparison {
        mode: computed.mode,
        discrepancies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, CompatibilityGraph, StateLabel};

    fn set(states: &[StateLabel]) -> StateSet {
        states.iter().copied().collect()
    }

    /// Naive global fixed point, independent of the work-list code: sweep
    /// every edge in both directions until nothing changes.
    fn sweep_oracle(model: &ConstraintModel, mode: Mode) -> BTreeMap<ContextId, StateSet> {
        let mut cand: BTreeMap<ContextId, StateSet> = model
            .contexts()
            .map(|c| (c.id, assignable_domain(c)))
            .collect();
        cand.insert(0, StateSet::singleton(mode.root_state()));
        let rel = model.relation();
        loop {
            let mut changed = false;
            for (s, d) in model.graph().edges() {
                let keep_src: StateSet = cand[&s]
                    .iter()
                    .filter(|&x| cand[&d].iter().any(|y| rel.contains(x, y)))
                    .collect();
                let keep_dst: StateSet = cand[&d]
                    .iter()
                    .filter(|&y| keep_src.iter().any(|x| rel.contains(x, y)))
                    .collect();
                if keep_src != cand[&s] || keep_dst != cand[&d] {
                    changed = true;
                    cand.insert(s, keep_src);
                    cand.insert(d, keep_dst);
                }
            }
            if !changed {
                return cand;
            }
        }
    }

    #[test]
    fn matches_sweep_oracle() {
        let m = builtin_model();
        for mode in Mode::BOTH {
            let t = propagate_supports(&m, mode).unwrap();
            assert_eq!(t.entries, sweep_oracle(&m, mode), "mode {mode}");
        }
    }

    #[test]
    fn root_and_rigid_rows() {
        let m = builtin_model();
        let a = propagate_supports(&m, Mode::A).unwrap();
        assert!(a.converged);
        assert_eq!(a.get(0), StateSet::singleton(StateLabel::S1_0));
        for mode in Mode::BOTH {
            let t = propagate_supports(&m, mode).unwrap();
            for id in (1..28).step_by(2) {
                assert_eq!(t.get(id), StateSet::singleton(StateLabel::S6_2));
            }
        }
    }

    #[test]
    fn context_twelve_mode_a() {
        let m = builtin_model();
        let a = propagate_supports(&m, Mode::A).unwrap();
        assert_eq!(
            a.get(12),
            set(&[StateLabel::S1_0, StateLabel::S4_0, StateLabel::S7_0])
        );
    }

    #[test]
    fn comparison_against_bundled() {
        let m = builtin_model();
        let a = propagate_supports(&m, Mode::A).unwrap();
        let cmp = compare_supports(&a, m.supports(Mode::A));
        assert!(!cmp.is_exact());
        assert!(cmp.for_context(0).is_none());
        for id in (1..28).step_by(2) {
            assert!(cmp.for_context(id).is_none());
        }
        let d12 = cmp.for_context(12).unwrap();
        assert!(d12.computed_only.is_empty());
        assert_eq!(d12.bundled_only.len(), 4);
        assert_eq!(m.supports(Mode::A).get(12).len(), 7);
    }

    #[test]
    fn fixed_point_is_idempotent() {
        let m = builtin_model();
        for mode in Mode::BOTH {
            let t = propagate_supports(&m, mode).unwrap();
            assert_eq!(pruning_pass(&m, &t), t);
        }
    }

    #[test]
    fn reverse_order_agrees() {
        let m = builtin_model();
        let rev: Vec<ContextId> = (0..28).rev().collect();
        for mode in Mode::BOTH {
            assert_eq!(
                propagate_supports(&m, mode).unwrap(),
                propagate_with_order(&m, mode, &rev).unwrap()
            );
        }
    }

    #[test]
    fn isolated_context_keeps_domain() {
        let m = builtin_model();
        let mut g = CompatibilityGraph::new(m.context_ids());
        for (s, d) in m.graph().edges().filter(|&(s, d)| s != 26 && d != 26) {
            g.insert_edge(s, d);
        }
        let m = m.with_graph(g).unwrap();
        let t = propagate_supports(&m, Mode::A).unwrap();
        assert_eq!(t.get(26).len(), 7);
    }

    #[test]
    fn empty_domain_reported() {
        let m = builtin_model();
        let mut r = m.relation().clone();
        // S1[0] loses every successor and predecessor inside debt 0
        for t in [StateLabel::S1_0, StateLabel::S4_0] {
            r.remove(StateLabel::S1_0, t);
        }
        for f in [StateLabel::S4_0, StateLabel::S7_0] {
            r.remove(f, StateLabel::S1_0);
        }
        let err = propagate_supports(&m.with_relation(r), Mode::A).unwrap_err();
        assert!(matches!(err, Error::EmptyDomain(_)));
    }
}
