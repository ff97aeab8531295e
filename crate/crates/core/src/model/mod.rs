//! The finite symbolic system: states, contexts, the compatibility graph,
//! the compressed transition relation and the bundled support tables.

mod builtin;
mod context;
pub mod dot;
mod graph;
mod relation;
mod state;
mod support;
pub mod text;
mod validate;

use std::collections::BTreeMap;

pub use builtin::{builtin_contexts, builtin_model, builtin_relation, PSI_EDGES, RELATION_ROWS};
pub use context::{Context, ContextId, Letter, Pattern, Regime};
pub use graph::{CompatibilityGraph, Edge};
pub(crate) use relation::RelationIndex;
pub use relation::TransitionRelation;
pub use state::{Debt, StateLabel, StateSet, ALL_STATES};
pub use support::{Mode, SupportTable};
pub use validate::{validate_model, CheckResult, ValidationReport};

use crate::error::{Error, Result};

/// Id of the root context whose value separates the two modes.
pub const ROOT_CONTEXT: ContextId = 0;

/// The assembled constraint system.
///
/// Construction only checks referential soundness (ids resolve, both
/// support tables cover every context with a non-empty set). Semantic
/// invariants are checked by [`validate_model`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintModel {
    contexts: BTreeMap<ContextId, Context>,
    graph: CompatibilityGraph,
    relation: TransitionRelation,
    supports_a: SupportTable,
    supports_b: SupportTable,
}

impl ConstraintModel {
    pub fn new(
        contexts: Vec<Context>,
        graph: CompatibilityGraph,
        relation: TransitionRelation,
        supports_a: SupportTable,
        supports_b: SupportTable,
    ) -> Result<Self> {
        let mut by_id = BTreeMap::new();
        for ctx in contexts {
            if by_id.insert(ctx.id, ctx).is_some() {
                return Err(Error::InconsistentModel(format!(
                    "duplicate context id {}",
                    ctx.id
                )));
            }
        }
        if !by_id.contains_key(&ROOT_CONTEXT) {
            return Err(Error::InconsistentModel(format!(
                "root context {ROOT_CONTEXT} is missing"
            )));
        }
        if let Some(v) = graph.vertices().iter().find(|v| !by_id.contains_key(v)) {
            return Err(Error::InconsistentModel(format!(
                "graph references unknown context {v}"
            )));
        }
        for (table, mode) in [(&supports_a, Mode::A), (&supports_b, Mode::B)] {
            if table.mode != mode {
                return Err(Error::InconsistentModel(format!(
                    "support table for mode {mode} is labelled {}",
                    table.mode
                )));
            }
            if let Some(id) = table.entries.keys().find(|id| !by_id.contains_key(id)) {
                return Err(Error::InconsistentModel(format!(
                    "mode {mode} support references unknown context {id}"
                )));
            }
            for id in by_id.keys() {
                match table.entries.get(id) {
                    None => {
                        return Err(Error::InconsistentModel(format!(
                            "mode {mode} support has no row for context {id}"
                        )))
                    }
                    Some(s) if s.is_empty() => {
                        return Err(Error::InconsistentModel(format!(
                            "mode {mode} support for context {id} is empty"
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        // every context is a vertex even when it has no incident edges
        let mut graph = graph;
        let mut full = CompatibilityGraph::new(by_id.keys().copied());
        for (s, d) in graph.edges() {
            full.insert_edge(s, d);
        }
        graph = full;

        Ok(Self {
            contexts: by_id,
            graph,
            relation,
            supports_a,
            supports_b,
        })
    }

    pub fn contexts(&self) -> impl Iterator<Item = &Context> {
        self.contexts.values()
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    pub fn context_ids(&self) -> impl Iterator<Item = ContextId> + '_ {
        self.contexts.keys().copied()
    }

    pub fn context(&self, id: ContextId) -> Result<&Context> {
        self.contexts.get(&id).ok_or(Error::UnknownContext(id))
    }

    pub fn graph(&self) -> &CompatibilityGraph {
        &self.graph
    }

    pub fn relation(&self) -> &TransitionRelation {
        &self.relation
    }

    pub fn supports(&self, mode: Mode) -> &SupportTable {
        match mode {
            Mode::A => &self.supports_a,
            Mode::B => &self.supports_b,
        }
    }

    pub fn root_id(&self) -> ContextId {
        ROOT_CONTEXT
    }

    /// Same model with a different relation.
    pub fn with_relation(&self, relation: TransitionRelation) -> Self {
        Self {
            relation,
            ..self.clone()
        }
    }

    /// Same model with a different graph. Fails if the graph references
    /// unknown contexts.
    pub fn with_graph(&self, graph: CompatibilityGraph) -> Result<Self> {
        Self::new(
            self.contexts.values().copied().collect(),
            graph,
            self.relation.clone(),
            self.supports_a.clone(),
            self.supports_b.clone(),
        )
    }

    /// Same model with one support table replaced.
    pub fn with_supports(&self, table: SupportTable) -> Result<Self> {
        let (a, b) = match table.mode {
            Mode::A => (table, self.supports_b.clone()),
            Mode::B => (self.supports_a.clone(), table),
        };
        Self::new(
            self.contexts.values().copied().collect(),
            self.graph.clone(),
            self.relation.clone(),
            a,
            b,
        )
    }
}

pub fn context_lookup(model: &ConstraintModel, id: ContextId) -> Result<Context> {
    model.context(id).copied()
}
