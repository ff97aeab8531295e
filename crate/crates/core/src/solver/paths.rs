use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use super::{assignable_domain, model_sensitive_set, CRITICAL_CORE};
use crate::error::{Error, Result};
use crate::model::{ConstraintModel, ContextId, Mode, StateSet};

/// A directed path from a sensitive context into the critical core together
/// with the candidate sets obtained by propagating the terminal's support
/// backwards along it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub source: ContextId,
    pub path: Vec<ContextId>,
    pub terminal: ContextId,
    /// One set per path node, aligned with `path`.
    pub backward_sets: Vec<StateSet>,
    /// Every backward set is non-empty.
    pub valid: bool,
    /// Each individual terminal value already yields a non-empty set at the
    /// source.
    pub pointwise_valid: bool,
}

/// Distance from every context to `target` along directed edges.
fn distances_to(model: &ConstraintModel, target: ContextId) -> BTreeMap<ContextId, usize> {
    let mut dist = BTreeMap::from([(target, 0)]);
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for u in model.graph().predecessors(v) {
            dist.entry(u).or_insert_with(|| {
                queue.push_back(u);
                d + 1
            });
        }
    }
    dist
}

fn backward(
    model: &ConstraintModel,
    path: &[ContextId],
    terminal_set: StateSet,
) -> Result<Vec<StateSet>> {
    let mut sets = vec![StateSet::EMPTY; path.len()];
    let last = path.len() - 1;
    sets[last] = terminal_set;
    for i in (0..last).rev() {
        let domain = assignable_domain(model.context(path[i])?);
        sets[i] = model.relation().preimage(sets[i + 1]).intersection(domain);
    }
    Ok(sets)
}

/// Shortest path from every sensitive non-core context into the core.
/// Ties go to the smaller terminal id, then to the lexicographically
/// smaller path.
pub fn paths_to_core(model: &ConstraintModel, mode: Mode) -> Result<BTreeMap<ContextId, PathWitness>> {
    let dists: Vec<(ContextId, BTreeMap<ContextId, usize>)> = CRITICAL_CORE
        .into_iter()
        .map(|t| (t, distances_to(model, t)))
        .collect();

    let mut out = BTreeMap::new();
    for source in model_sensitive_set(model) {
        if CRITICAL_CORE.contains(&source) {
            continue;
        }
        let (terminal, dist) = dists
            .iter()
            .filter_map(|(t, d)| d.get(&source).map(|&k| (k, *t, d)))
            .min_by_key(|&(k, t, _)| (k, t))
            .map(|(_, t, d)| (t, d))
            .ok_or(Error::NoPath(source))?;

        let mut path = vec![source];
        let mut cur = source;
        while cur != terminal {
            let want = dist[&cur] - 1;
            cur = model
                .graph()
                .successors(cur)
                .filter(|u| dist.get(u) == Some(&want))
                .min()
                .expect("BFS layer has a successor");
            path.push(cur);
        }

        let terminal_set = model
            .supports(mode)
            .get(terminal)
            .intersection(assignable_domain(model.context(terminal)?));
        let backward_sets = backward(model, &path, terminal_set)?;
        let valid = backward_sets.iter().all(|s| !s.is_empty());
        let mut pointwise_valid = !terminal_set.is_empty();
        for v in terminal_set.iter() {
            let sets = backward(model, &path, StateSet::singleton(v))?;
            pointwise_valid &= sets.iter().all(|s| !s.is_empty());
        }

        out.insert(
            source,
            PathWitness {
                source,
                path,
                terminal,
                backward_sets,
                valid,
                pointwise_valid,
            },
        );
    }
    Ok(out)
}

pub fn render_paths_text(mode: Mode, witnesses: &BTreeMap<ContextId, PathWitness>) -> String {
    let mut out = format!("Mode {mode} paths into the critical core:\n");
    for w in witnesses.values() {
        let path: Vec<String> = w.path.iter().map(|id| id.to_string()).collect();
        let _ = writeln!(
            out,
            "  {:>2} : {} -> terminal {} [{}]",
            w.source,
            path.join(" -> "),
            w.terminal,
            if w.valid { "valid" } else { "INVALID" }
        );
        for (id, set) in w.path.iter().zip(&w.backward_sets) {
            let _ = writeln!(out, "       {id:>2} : {}", set.to_spaced());
        }
    }
    let bad = witnesses.values().filter(|w| !w.valid).count();
    let _ = writeln!(out, "invalid witnesses: {bad}");
    out
}
