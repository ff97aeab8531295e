//! The bundled finite system: 28 contexts, 34 compatibility edges, the
//! 37-pair compressed relation and both bundled support tables.

use super::context::{Context, ContextId, Letter, Pattern, Regime};
use super::graph::CompatibilityGraph;
use super::relation::TransitionRelation;
use super::state::{Debt, StateLabel, StateSet};
use super::support::{Mode, SupportTable};
use super::ConstraintModel;

use Letter::*;
use Regime::*;

/// `(pattern, regime, pos, parity)` for context pairs `2k` (debt 0) and
/// `2k + 1` (debt 2).
const CONTEXT_SHAPES: [([Letter; 3], Regime, u8, u8); 14] = [
    ([C, E, B], R1, 1, 1),
    ([E, B, E], R1, 2, 0),
    ([B, E, A], R2, 1, 1),
    ([E, A, D], R2, 2, 0),
    ([A, D, D], R2, 3, 1),
    ([D, D, D], R2, 4, 0),
    ([D, D, C], R2, 5, 1),
    ([D, C, E], R2, 6, 0),
    ([B, E, B], R1, 1, 1),
    ([B, E, A], R3, 1, 1),
    ([E, A, D], R3, 2, 0),
    ([A, D, C], R3, 3, 1),
    ([D, C, E], R3, 4, 0),
    ([C, E, A], R3, 1, 1),
];

pub const PSI_EDGES: [(ContextId, ContextId); 34] = [
    // local two-cycles (R1)
    (0, 2),
    (2, 0),
    (1, 3),
    (3, 1),
    // forward chains (R2)
    (4, 6),
    (6, 8),
    (8, 10),
    (10, 12),
    (12, 14),
    (14, 0),
    (5, 7),
    (7, 9),
    (9, 11),
    (11, 13),
    (13, 15),
    (15, 1),
    // forward chains (R3)
    (18, 20),
    (20, 22),
    (22, 24),
    (24, 0),
    (19, 21),
    (21, 23),
    (23, 25),
    (25, 1),
    (26, 20),
    (27, 21),
    // additional compatibility edges
    (16, 2),
    (17, 3),
    (14, 2),
    (24, 2),
    (6, 10),
    (20, 24),
    (12, 0),
    (22, 0),
];

/// The checker's `{from_i, from_d, to_i, to_d}` array, in its original order.
pub const RELATION_ROWS: [[u8; 4]; 37] = [
    [3, 0, 6, 0],
    [7, 0, 4, 0],
    [4, 0, 5, 0],
    [5, 0, 5, 0],
    [4, 0, 2, 0],
    [2, 0, 6, 0],
    [6, 0, 6, 0],
    [6, 0, 7, 0],
    [7, 0, 1, 0],
    [1, 0, 1, 0],
    [0, 2, 7, 0],
    [7, 0, 0, 2],
    [1, 0, 4, 0],
    [4, 0, 4, 0],
    [2, 0, 4, 0],
    [2, 0, 3, 0],
    [3, 0, 5, 0],
    [5, 0, 4, 0],
    [3, 0, 3, 0],
    [3, 0, 4, 0],
    [4, 0, 3, 0],
    [5, 0, 2, 0],
    [1, 0, 0, 2],
    [0, 2, 6, 2],
    [6, 2, 7, 0],
    [3, 0, 2, 0],
    [2, 0, 2, 0],
    [2, 0, 5, 0],
    [5, 0, 3, 0],
    [6, 2, 6, 2],
    [6, 0, 3, 0],
    [4, 0, 6, 0],
    [6, 0, 5, 0],
    [4, 0, 1, 0],
    [4, 0, 0, 2],
    [5, 0, 6, 0],
    [6, 0, 2, 0],
];

/// Debt-0 support rows for even contexts 0, 2, ..., 26 as S-indices. Every
/// odd context supports exactly S6[2] in both modes.
const SUPPORT_A_EVEN: [&[u8]; 14] = [
    &[1],
    &[1, 4],
    &[1, 2, 3, 4, 5, 6],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 4, 7],
    &[1, 2, 3, 4, 5],
    &[1, 2, 3, 4, 5, 6],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 4, 7],
    &[1, 2, 3, 4, 5, 6],
];

const SUPPORT_B_EVEN: [&[u8]; 14] = [
    &[2],
    &[2],
    &[2],
    &[2, 3, 4],
    &[1, 2, 3, 4, 5, 6],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[2, 3, 4, 5, 6],
    &[2, 3, 4, 5, 6],
    &[2, 3, 4, 5, 6],
    &[1, 2, 3, 4, 5, 6, 7],
    &[1, 2, 3, 4, 5, 6, 7],
    &[2, 3, 4, 5, 6],
    &[1, 2, 3, 4, 5, 6, 7],
];

pub fn builtin_contexts() -> Vec<Context> {
    CONTEXT_SHAPES
        .iter()
        .enumerate()
        .flat_map(|(k, &(letters, regime, pos, parity))| {
            [Debt::Zero, Debt::Two]
                .into_iter()
                .enumerate()
                .map(move |(j, debt)| Context {
                    id: 2 * k + j,
                    pattern: Pattern(letters),
                    regime,
                    pos,
                    parity,
                    debt,
                })
        })
        .collect()
}

pub fn builtin_relation() -> TransitionRelation {
    TransitionRelation::new(RELATION_ROWS.iter().map(|&[fi, fd, ti, td]| {
        (
            StateLabel::new(fi, fd).expect("builtin state"),
            StateLabel::new(ti, td).expect("builtin state"),
        )
    }))
}

fn support_table(mode: Mode, even_rows: &[&[u8]; 14]) -> SupportTable {
    let mut table = SupportTable::new(mode);
    for (k, row) in even_rows.iter().enumerate() {
        let states = row
            .iter()
            .map(|&i| StateLabel::new(i, 0).expect("builtin state"))
            .collect();
        table.set(2 * k, states);
        table.set(2 * k + 1, StateSet::singleton(StateLabel::S6_2));
    }
    table
}

/// The bundled model used when no model file is given.
pub fn builtin_model() -> ConstraintModel {
    let contexts = builtin_contexts();
    let mut graph = CompatibilityGraph::new(contexts.iter().map(|c| c.id));
    for (s, d) in PSI_EDGES {
        graph.insert_edge(s, d);
    }
    ConstraintModel::new(
        contexts,
        graph,
        builtin_relation(),
        support_table(Mode::A, &SUPPORT_A_EVEN),
        support_table(Mode::B, &SUPPORT_B_EVEN),
    )
    .expect("builtin model is referentially sound")
}
