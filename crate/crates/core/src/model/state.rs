use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Debt value carried by contexts and symbolic states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Debt {
    Zero,
    Two,
}

impl Debt {
    pub fn value(self) -> u8 {
        match self {
            Debt::Zero => 0,
            Debt::Two => 2,
        }
    }

    pub fn from_value(v: u8) -> Option<Self> {
        match v {
            0 => Some(Debt::Zero),
            2 => Some(Debt::Two),
            _ => None,
        }
    }
}

impl fmt::Display for Debt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Debt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

/// A compressed symbolic state `S<i>[d]`.
///
/// Only nine pairs exist: S1..S7 at debt 0, plus S0 and S6 at debt 2.
/// The derived order is the canonical one: by debt, then by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateLabel {
    debt: Debt,
    index: u8,
}

/// All nine states in canonical order.
pub const ALL_STATES: [StateLabel; 9] = [
    StateLabel::S1_0,
    StateLabel::S2_0,
    StateLabel::S3_0,
    StateLabel::S4_0,
    StateLabel::S5_0,
    StateLabel::S6_0,
    StateLabel::S7_0,
    StateLabel::S0_2,
    StateLabel::S6_2,
];

impl StateLabel {
    pub const S1_0: Self = Self::raw(1, Debt::Zero);
    pub const S2_0: Self = Self::raw(2, Debt::Zero);
    pub const S3_0: Self = Self::raw(3, Debt::Zero);
    pub const S4_0: Self = Self::raw(4, Debt::Zero);
    pub const S5_0: Self = Self::raw(5, Debt::Zero);
    pub const S6_0: Self = Self::raw(6, Debt::Zero);
    pub const S7_0: Self = Self::raw(7, Debt::Zero);
    /// Auxiliary debt-carrying state; never part of a support set.
    pub const S0_2: Self = Self::raw(0, Debt::Two);
    pub const S6_2: Self = Self::raw(6, Debt::Two);

    const fn raw(index: u8, debt: Debt) -> Self {
        Self { debt, index }
    }

    pub fn new(index: u8, debt: u8) -> Result<Self> {
        let d = Debt::from_value(debt).ok_or(Error::InvalidState { index, debt })?;
        let ok = match d {
            Debt::Zero => (1..=7).contains(&index),
            Debt::Two => index == 0 || index == 6,
        };
        if ok {
            Ok(Self::raw(index, d))
        } else {
            Err(Error::InvalidState { index, debt })
        }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn debt(self) -> Debt {
        self.debt
    }

    pub fn is_auxiliary(self) -> bool {
        self == Self::S0_2
    }

    /// Position in [`ALL_STATES`].
    pub fn ordinal(self) -> usize {
        match self.debt {
            Debt::Zero => self.index as usize - 1,
            Debt::Two if self.index == 0 => 7,
            Debt::Two => 8,
        }
    }

    pub fn from_ordinal(ord: usize) -> Self {
        ALL_STATES[ord]
    }

    /// Compact form used by the model text format: `S1:0`.
    pub fn compact(self) -> String {
        format!("S{}:{}", self.index, self.debt)
    }

    pub fn parse_compact(s: &str) -> Result<Self, String> {
        let rest = s
            .strip_prefix('S')
            .ok_or_else(|| format!("state `{s}` must start with `S`"))?;
        let (i, d) = rest
            .split_once(':')
            .ok_or_else(|| format!("state `{s}` must look like S<i>:<d>"))?;
        let i: u8 = i.parse().map_err(|_| format!("bad state index in `{s}`"))?;
        let d: u8 = d.parse().map_err(|_| format!("bad state debt in `{s}`"))?;
        Self::new(i, d).map_err(|e| e.to_string())
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}[{}]", self.index, self.debt)
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    /// Accepts `S1[0]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidState { index: 0, debt: 1 };
        let rest = s.strip_prefix('S').ok_or_else(bad)?;
        let (i, d) = rest.split_once('[').ok_or_else(bad)?;
        let d = d.strip_suffix(']').ok_or_else(bad)?;
        let i: u8 = i.parse().map_err(|_| bad())?;
        let d: u8 = d.parse().map_err(|_| bad())?;
        Self::new(i, d)
    }
}

impl Serialize for StateLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A set of states, stored as a bitmask over [`ALL_STATES`]. Iteration is in
/// canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct StateSet(u16);

impl StateSet {
    pub const EMPTY: Self = Self(0);

    pub fn all() -> Self {
        Self((1 << ALL_STATES.len()) - 1)
    }

    pub fn singleton(s: StateLabel) -> Self {
        Self(1 << s.ordinal())
    }

    pub fn insert(&mut self, s: StateLabel) -> bool {
        let had = self.contains(s);
        self.0 |= 1 << s.ordinal();
        !had
    }

    pub fn remove(&mut self, s: StateLabel) -> bool {
        let had = self.contains(s);
        self.0 &= !(1 << s.ordinal());
        had
    }

    pub fn contains(self, s: StateLabel) -> bool {
        self.0 & (1 << s.ordinal()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = StateLabel> {
        ALL_STATES
            .into_iter()
            .filter(move |s| self.0 & (1 << s.ordinal()) != 0)
    }

    /// States of one debt level, excluding nothing.
    pub fn with_debt(debt: Debt) -> Self {
        ALL_STATES.into_iter().filter(|s| s.debt() == debt).collect()
    }

    /// Space-separated `S1[0] S4[0]` rendering.
    pub fn to_spaced(self) -> String {
        self.iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<StateLabel> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateLabel>>(iter: I) -> Self {
        let mut set = Self::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|s| s.to_string())).finish()
    }
}

impl Serialize for StateSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_states() {
        let mut ok = Vec::new();
        for i in 0..=8 {
            for d in 0..=3 {
                if let Ok(s) = StateLabel::new(i, d) {
                    ok.push(s);
                }
            }
        }
        ok.sort();
        assert_eq!(ok, ALL_STATES.to_vec());
        assert!(StateLabel::new(0, 0).is_err());
        assert!(StateLabel::new(1, 2).is_err());
        assert!(StateLabel::new(6, 1).is_err());
    }

    #[test]
    fn ordinals_round_trip() {
        for (i, s) in ALL_STATES.iter().enumerate() {
            assert_eq!(s.ordinal(), i);
            assert_eq!(StateLabel::from_ordinal(i), *s);
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(StateLabel::S0_2.to_string(), "S0[2]");
        assert_eq!("S6[2]".parse::<StateLabel>().unwrap(), StateLabel::S6_2);
        assert!("S8[0]".parse::<StateLabel>().is_err());
        assert_eq!(StateLabel::S4_0.compact(), "S4:0");
        assert_eq!(StateLabel::parse_compact("S7:0").unwrap(), StateLabel::S7_0);
        assert!(StateLabel::parse_compact("S0:0").is_err());
        assert!(StateLabel::parse_compact("X1:0").is_err());
    }

    #[test]
    fn set_ops() {
        let a: StateSet = [StateLabel::S1_0, StateLabel::S4_0].into_iter().collect();
        let b = StateSet::singleton(StateLabel::S4_0);
        assert!(b.is_subset(a));
        assert_eq!(a.difference(b), StateSet::singleton(StateLabel::S1_0));
        assert_eq!(a.to_spaced(), "S1[0] S4[0]");
        assert_eq!(StateSet::with_debt(Debt::Two).len(), 2);
        assert_eq!(StateSet::all().len(), 9);
    }
}
