use std::collections::BTreeSet;

use serde::Serialize;

use super::state::{StateLabel, StateSet, ALL_STATES};

/// Compressed successor relation on symbolic states.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TransitionRelation {
    pairs: BTreeSet<(StateLabel, StateLabel)>,
}

impl TransitionRelation {
    pub fn new(pairs: impl IntoIterator<Item = (StateLabel, StateLabel)>) -> Self {
        Self {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, from: StateLabel, to: StateLabel) -> bool {
        self.pairs.insert((from, to))
    }

    pub fn remove(&mut self, from: StateLabel, to: StateLabel) -> bool {
        self.pairs.remove(&(from, to))
    }

    pub fn contains(&self, from: StateLabel, to: StateLabel) -> bool {
        self.pairs.contains(&(from, to))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (StateLabel, StateLabel)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn successors(&self, from: StateLabel) -> StateSet {
        self.pairs
            .range((from, ALL_STATES[0])..=(from, ALL_STATES[8]))
            .map(|&(_, t)| t)
            .collect()
    }

    pub fn predecessors(&self, to: StateLabel) -> StateSet {
        self.pairs
            .iter()
            .filter(|&&(_, t)| t == to)
            .map(|&(f, _)| f)
            .collect()
    }

    /// States with at least one successor inside `targets`.
    pub fn preimage(&self, targets: StateSet) -> StateSet {
        self.pairs
            .iter()
            .filter(|&&(_, t)| targets.contains(t))
            .map(|&(f, _)| f)
            .collect()
    }

    /// States reachable in one step from `sources`.
    pub fn image(&self, sources: StateSet) -> StateSet {
        self.pairs
            .iter()
            .filter(|&&(f, _)| sources.contains(f))
            .map(|&(_, t)| t)
            .collect()
    }

    /// Adjacency rows `(from, successors)` in canonical order, skipping
    /// states without successors.
    pub fn adjacency(&self) -> Vec<(StateLabel, StateSet)> {
        ALL_STATES
            .into_iter()
            .map(|s| (s, self.successors(s)))
            .filter(|(_, succ)| !succ.is_empty())
            .collect()
    }

    /// Pairs whose endpoints have different debt.
    pub fn debt_changing(&self) -> impl Iterator<Item = (StateLabel, StateLabel)> + '_ {
        self.pairs().filter(|(f, t)| f.debt() != t.debt())
    }
}

/// Precomputed successor/predecessor masks for fast repeated lookups.
#[derive(Debug, Clone, Copy)]
pub(crate) struct RelationIndex {
    succ: [StateSet; 9],
    pred: [StateSet; 9],
}

impl RelationIndex {
    pub(crate) fn new(rel: &TransitionRelation) -> Self {
        let mut succ = [StateSet::EMPTY; 9];
        let mut pred = [StateSet::EMPTY; 9];
        for (f, t) in rel.pairs() {
            succ[f.ordinal()].insert(t);
            pred[t.ordinal()].insert(f);
        }
        Self { succ, pred }
    }

    pub(crate) fn succ(&self, s: StateLabel) -> StateSet {
        self.succ[s.ordinal()]
    }

    pub(crate) fn pred(&self, s: StateLabel) -> StateSet {
        self.pred[s.ordinal()]
    }
}
