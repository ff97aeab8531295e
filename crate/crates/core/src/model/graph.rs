use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::context::ContextId;

pub type Edge = (ContextId, ContextId);

/// Directed compatibility graph over context ids.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CompatibilityGraph {
    vertices: BTreeSet<ContextId>,
    edges: BTreeSet<Edge>,
}

impl CompatibilityGraph {
    pub fn new(vertices: impl IntoIterator<Item = ContextId>) -> Self {
        Self {
            vertices: vertices.into_iter().collect(),
            edges: BTreeSet::new(),
        }
    }

    /// Adds an edge, registering its endpoints as vertices.
    pub fn insert_edge(&mut self, src: ContextId, dst: ContextId) -> bool {
        self.vertices.insert(src);
        self.vertices.insert(dst);
        self.edges.insert((src, dst))
    }

    pub fn remove_edge(&mut self, src: ContextId, dst: ContextId) -> bool {
        self.edges.remove(&(src, dst))
    }

    pub fn contains_edge(&self, src: ContextId, dst: ContextId) -> bool {
        self.edges.contains(&(src, dst))
    }

    pub fn vertices(&self) -> &BTreeSet<ContextId> {
        &self.vertices
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn successors(&self, v: ContextId) -> impl Iterator<Item = ContextId> + '_ {
        self.edges
            .range((v, ContextId::MIN)..=(v, ContextId::MAX))
            .map(|&(_, d)| d)
    }

    pub fn predecessors(&self, v: ContextId) -> impl Iterator<Item = ContextId> + '_ {
        self.edges
            .iter()
            .filter(move |&&(_, d)| d == v)
            .map(|&(s, _)| s)
    }

    /// Undirected neighbors of `v`, excluding `v` itself.
    pub fn neighbors(&self, v: ContextId) -> BTreeSet<ContextId> {
        self.successors(v)
            .chain(self.predecessors(v))
            .filter(|&u| u != v)
            .collect()
    }

    /// Edges incident to `v` in either direction.
    pub fn incident_edges(&self, v: ContextId) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .copied()
            .filter(move |&(s, d)| s == v || d == v)
    }

    /// Restriction to the given vertex set.
    pub fn induced(&self, keep: &BTreeSet<ContextId>) -> Self {
        Self {
            vertices: self.vertices.intersection(keep).copied().collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(s, d)| keep.contains(s) && keep.contains(d))
                .collect(),
        }
    }

    /// Connected components of the underlying undirected graph, each sorted,
    /// listed by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<ContextId>> {
        let mut adj: BTreeMap<ContextId, Vec<ContextId>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for &(s, d) in &self.edges {
            adj.entry(s).or_default().push(d);
            adj.entry(d).or_default().push(s);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = BTreeSet::from([start]);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &u in &adj[&v] {
                    if seen.insert(u) {
                        comp.insert(u);
                        queue.push_back(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Whether the directed graph contains a cycle (self-loops included).
    pub fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle remains iff some vertex never reaches in-degree 0
        let mut indeg: BTreeMap<ContextId, usize> =
            self.vertices.iter().map(|&v| (v, 0)).collect();
        for &(_, d) in &self.edges {
            *indeg.entry(d).or_default() += 1;
        }
        let mut queue: VecDeque<ContextId> = indeg
            .iter()
            .filter(|(_, &k)| k == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut removed = 0;
        while let Some(v) = queue.pop_front() {
            removed += 1;
            for d in self.successors(v) {
                let k = indeg.get_mut(&d).expect("known vertex");
                *k -= 1;
                if *k == 0 {
                    queue.push_back(d);
                }
            }
        }
        removed < indeg.len()
    }
}
