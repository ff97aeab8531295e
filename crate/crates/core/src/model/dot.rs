//! Graphviz renderings of the compatibility graph and the compressed
//! transition relation. Output is deterministic.

use std::fmt::Write as _;
use std::str::FromStr;

use super::state::{Debt, StateLabel, ALL_STATES};
use super::ConstraintModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DotScope {
    Contexts,
    States,
}

impl FromStr for DotScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "contexts" => Ok(DotScope::Contexts),
            "states" => Ok(DotScope::States),
            other => Err(format!("unknown dot scope `{other}`")),
        }
    }
}

fn state_node(s: StateLabel) -> String {
    format!("s{}_{}", s.index(), s.debt())
}

pub fn export_dot(model: &ConstraintModel, scope: DotScope) -> String {
    match scope {
        DotScope::Contexts => contexts_dot(model),
        DotScope::States => states_dot(model),
    }
}

fn contexts_dot(model: &ConstraintModel) -> String {
    let mut out = String::from("digraph compatibility {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");
    for debt in [Debt::Zero, Debt::Two] {
        let _ = writeln!(out, "  subgraph cluster_debt{debt} {{");
        let _ = writeln!(out, "    label=\"debt {debt}\";");
        for ctx in model.contexts().filter(|c| c.debt == debt) {
            let _ = writeln!(
                out,
                "    c{} [label=\"λ_{}\", tooltip=\"{}\"];",
                ctx.id, ctx.id, ctx
            );
        }
        out.push_str("  }\n");
    }
    for (s, d) in model.graph().edges() {
        let _ = writeln!(out, "  c{s} -> c{d};");
    }
    out.push_str("}\n");
    out
}

fn states_dot(model: &ConstraintModel) -> String {
    let mut out = String::from("digraph transitions {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [shape=circle];\n");
    for debt in [Debt::Zero, Debt::Two] {
        let _ = writeln!(out, "  subgraph cluster_debt{debt} {{");
        let _ = writeln!(out, "    label=\"debt {debt}\";");
        for s in ALL_STATES.into_iter().filter(|s| s.debt() == debt) {
            let shape = match debt {
                Debt::Zero => "circle",
                Debt::Two => "doublecircle",
            };
            let _ = writeln!(
                out,
                "    {} [label=\"{}\", shape={}];",
                state_node(s),
                s,
                shape
            );
        }
        out.push_str("  }\n");
    }
    for (f, t) in model.relation().pairs() {
        let _ = writeln!(out, "  {} -> {};", state_node(f), state_node(t));
    }
    out.push_str("}\n");
    out
}
