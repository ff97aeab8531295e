use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::context::ContextId;
use super::state::{StateLabel, StateSet};

/// One of the two global classes of valid assignments, fixed by the value
/// at the root context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    A,
    B,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::A, Mode::B];

    /// The state the root context is pinned to in this mode.
    pub fn root_state(self) -> StateLabel {
        match self {
            Mode::A => StateLabel::S1_0,
            Mode::B => StateLabel::S2_0,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Mode::A => 'A',
            Mode::B => 'B',
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(Mode::A),
            "B" | "b" => Ok(Mode::B),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

impl Serialize for Mode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Per-context support sets for one mode.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportTable {
    pub mode: Mode,
    pub entries: BTreeMap<ContextId, StateSet>,
}

impl SupportTable {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            entries: BTreeMap::new(),
        }
    }

    /// Empty set for unknown ids.
    pub fn get(&self, id: ContextId) -> StateSet {
        self.entries.get(&id).copied().unwrap_or_default()
    }

    pub fn set(&mut self, id: ContextId, states: StateSet) {
        self.entries.insert(id, states);
    }

    /// Copy restricted to the given ids.
    pub fn restricted(&self, ids: &[ContextId]) -> Self {
        Self {
            mode: self.mode,
            entries: ids.iter().map(|&id| (id, self.get(id))).collect(),
        }
    }
}
