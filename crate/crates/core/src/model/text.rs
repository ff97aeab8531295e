//! Line-oriented model text format.
//!
//! ```text
//! [CONTEXTS]
//! 0 C,E,B R1 1 1 0
//! [PSI]
//! 14 0
//! [RELATION]
//! 1 0 1 0
//! [SUPPORT A]
//! 2 S1:0 S4:0
//! [SUPPORT B]
//! 2 S2:0
//! ```
//!
//! `#` starts a comment, blank lines are ignored. Serialization is
//! canonical: equal models produce identical bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::context::{Context, ContextId, Pattern, Regime};
use super::graph::CompatibilityGraph;
use super::relation::TransitionRelation;
use super::state::{Debt, StateLabel, StateSet};
use super::support::{Mode, SupportTable};
use super::ConstraintModel;
use crate::error::{Error, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Contexts,
    Psi,
    Relation,
    Support(Mode),
}

impl Section {
    const ALL: [Section; 5] = [
        Section::Contexts,
        Section::Psi,
        Section::Relation,
        Section::Support(Mode::A),
        Section::Support(Mode::B),
    ];

    fn header(self) -> &'static str {
        match self {
            Section::Contexts => "[CONTEXTS]",
            Section::Psi => "[PSI]",
            Section::Relation => "[RELATION]",
            Section::Support(Mode::A) => "[SUPPORT A]",
            Section::Support(Mode::B) => "[SUPPORT B]",
        }
    }

    fn from_header(h: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.header() == h)
    }
}

pub fn serialize_model(model: &ConstraintModel) -> String {
    let mut out = String::new();
    out.push_str(Section::Contexts.header());
    out.push('\n');
    for c in model.contexts() {
        let _ = writeln!(
            out,
            "{} {} {} {} {} {}",
            c.id, c.pattern, c.regime, c.pos, c.parity, c.debt
        );
    }
    out.push('\n');
    out.push_str(Section::Psi.header());
    out.push('\n');
    for (s, d) in model.graph().edges() {
        let _ = writeln!(out, "{s} {d}");
    }
    out.push('\n');
    out.push_str(Section::Relation.header());
    out.push('\n');
    for (f, t) in model.relation().pairs() {
        let _ = writeln!(
            out,
            "{} {} {} {}",
            f.index(),
            f.debt(),
            t.index(),
            t.debt()
        );
    }
    for mode in Mode::BOTH {
        out.push('\n');
        out.push_str(Section::Support(mode).header());
        out.push('\n');
        for (id, set) in &model.supports(mode).entries {
            let states: Vec<String> = set.iter().map(|s| s.compact()).collect();
            let _ = writeln!(out, "{id} {}", states.join(" "));
        }
    }
    out
}

fn field<T: std::str::FromStr>(line: usize, raw: &str, what: &str) -> Result<T, ParseError> {
    raw.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{raw}`")))
}

fn parse_context(line: usize, parts: &[&str]) -> Result<Context, ParseError> {
    if parts.len() != 6 {
        return Err(ParseError::new(
            line,
            format!("context line needs 6 fields, got {}", parts.len()),
        ));
    }
    let id: ContextId = field(line, parts[0], "context id")?;
    let pattern: Pattern = parts[1]
        .parse()
        .map_err(|e: String| ParseError::new(line, e))?;
    let regime: Regime = parts[2]
        .parse()
        .map_err(|e: String| ParseError::new(line, e))?;
    let pos: u8 = field(line, parts[3], "position")?;
    let parity: u8 = field(line, parts[4], "parity")?;
    let debt_raw: u8 = field(line, parts[5], "debt")?;
    let debt = Debt::from_value(debt_raw)
        .ok_or_else(|| ParseError::new(line, format!("debt must be 0 or 2, got {debt_raw}")))?;
    Ok(Context {
        id,
        pattern,
        regime,
        pos,
        parity,
        debt,
    })
}

fn state(line: usize, index: &str, debt: &str) -> Result<StateLabel, ParseError> {
    let i: u8 = field(line, index, "state index")?;
    let d: u8 = field(line, debt, "state debt")?;
    StateLabel::new(i, d).map_err(|e| ParseError::new(line, e.to_string()))
}

/// Parses the model text format. Only syntax and referential soundness are
/// checked; run [`super::validate_model`] for the semantic invariants.
pub fn parse_model(text: &str) -> Result<ConstraintModel, ParseError> {
    let mut seen: BTreeMap<Section, usize> = BTreeMap::new();
    let mut current: Option<Section> = None;

    let mut contexts: BTreeMap<ContextId, Context> = BTreeMap::new();
    let mut edges: Vec<(usize, ContextId, ContextId)> = Vec::new();
    let mut edge_set = BTreeSet::new();
    let mut relation = TransitionRelation::default();
    let mut supports: BTreeMap<Mode, Vec<(usize, ContextId, StateSet)>> = BTreeMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            let section = Section::from_header(content)
                .ok_or_else(|| ParseError::new(line, format!("unknown section `{content}`")))?;
            if let Some(prev) = seen.insert(section, line) {
                return Err(ParseError::new(
                    line,
                    format!("duplicate section {} (first at line {prev})", section.header()),
                ));
            }
            current = Some(section);
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        match current {
            None => return Err(ParseError::new(line, "data before any section header")),
            Some(Section::Contexts) => {
                let ctx = parse_context(line, &parts)?;
                if contexts.insert(ctx.id, ctx).is_some() {
                    return Err(ParseError::new(
                        line,
                        format!("duplicate context id {}", ctx.id),
                    ));
                }
            }
            Some(Section::Psi) => {
                if parts.len() != 2 {
                    return Err(ParseError::new(line, "edge line needs `src dst`"));
                }
                let s: ContextId = field(line, parts[0], "context id")?;
                let d: ContextId = field(line, parts[1], "context id")?;
                if !edge_set.insert((s, d)) {
                    return Err(ParseError::new(line, format!("duplicate edge {s} {d}")));
                }
                edges.push((line, s, d));
            }
            Some(Section::Relation) => {
                if parts.len() != 4 {
                    return Err(ParseError::new(
                        line,
                        "relation line needs `sFrom dFrom sTo dTo`",
                    ));
                }
                let from = state(line, parts[0], parts[1])?;
                let to = state(line, parts[2], parts[3])?;
                if !relation.insert(from, to) {
                    return Err(ParseError::new(
                        line,
                        format!("duplicate relation pair {from} -> {to}"),
                    ));
                }
            }
            Some(Section::Support(mode)) => {
                if parts.len() < 2 {
                    return Err(ParseError::new(line, "support line needs `ctx S<i>:<d> ...`"));
                }
                let id: ContextId = field(line, parts[0], "context id")?;
                let mut set = StateSet::EMPTY;
                for p in &parts[1..] {
                    let s = StateLabel::parse_compact(p).map_err(|e| ParseError::new(line, e))?;
                    if !set.insert(s) {
                        return Err(ParseError::new(line, format!("duplicate state {s}")));
                    }
                }
                supports.entry(mode).or_default().push((line, id, set));
            }
        }
    }

    for section in Section::ALL {
        if !seen.contains_key(&section) {
            return Err(ParseError::new(
                last_line + 1,
                format!("missing {} section", section.header()),
            ));
        }
    }

    let mut graph = CompatibilityGraph::new(contexts.keys().copied());
    for (line, s, d) in edges {
        for id in [s, d] {
            if !contexts.contains_key(&id) {
                return Err(ParseError::new(line, format!("unknown context {id}")));
            }
        }
        graph.insert_edge(s, d);
    }

    let mut tables = Vec::new();
    for mode in Mode::BOTH {
        let mut table = SupportTable::new(mode);
        for &(line, id, set) in supports.get(&mode).map(Vec::as_slice).unwrap_or_default() {
            if !contexts.contains_key(&id) {
                return Err(ParseError::new(line, format!("unknown context {id}")));
            }
            if table.entries.insert(id, set).is_some() {
                return Err(ParseError::new(
                    line,
                    format!("duplicate mode {mode} support row for context {id}"),
                ));
            }
        }
        let header_line = seen[&Section::Support(mode)];
        if let Some(id) = contexts.keys().find(|id| !table.entries.contains_key(id)) {
            return Err(ParseError::new(
                header_line,
                format!("mode {mode} support has no row for context {id}"),
            ));
        }
        tables.push(table);
    }
    let supports_b = tables.pop().expect("two tables");
    let supports_a = tables.pop().expect("two tables");

    ConstraintModel::new(
        contexts.into_values().collect(),
        graph,
        relation,
        supports_a,
        supports_b,
    )
    .map_err(|e| match e {
        Error::Parse(p) => p,
        other => ParseError::new(last_line, other.to_string()),
    })
}
