use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::state::Debt;

pub type ContextId = usize;

/// Opaque pattern letter. The letters carry no behavior of their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
        }
    }
}

impl TryFrom<char> for Letter {
    type Error = String;

    fn try_from(c: char) -> Result<Self, String> {
        Ok(match c {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            other => return Err(format!("unknown pattern letter `{other}`")),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(pub [Letter; 3]);

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{},{},{}", a.as_char(), b.as_char(), c.as_char())
    }
}

impl FromStr for Pattern {
    type Err = String;

    /// Parses `C,E,B`.
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 3 {
            return Err(format!("pattern `{s}` must have three letters"));
        }
        let mut letters = [Letter::A; 3];
        for (slot, part) in letters.iter_mut().zip(parts) {
            let mut chars = part.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => *slot = Letter::try_from(c)?,
                _ => return Err(format!("pattern `{s}` must have single-letter entries")),
            }
        }
        Ok(Pattern(letters))
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    R1,
    R2,
    R3,
}

impl Regime {
    pub fn number(self) -> u8 {
        match self {
            Regime::R1 => 1,
            Regime::R2 => 2,
            Regime::R3 => 3,
        }
    }
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "R1" => Ok(Regime::R1),
            "R2" => Ok(Regime::R2),
            "R3" => Ok(Regime::R3),
            other => Err(format!("unknown regime `{other}`")),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}", self.number())
    }
}

impl Serialize for Regime {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An admissible local configuration `(pattern, regime, pos, parity, debt)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Context {
    pub id: ContextId,
    pub pattern: Pattern,
    pub regime: Regime,
    pub pos: u8,
    pub parity: u8,
    pub debt: Debt,
}

impl Context {
    /// True when both contexts agree on everything except id and debt.
    pub fn same_shape(&self, other: &Context) -> bool {
        self.pattern == other.pattern
            && self.regime == other.regime
            && self.pos == other.pos
            && self.parity == other.parity
    }
}

impl fmt::Display for Context {
    /// `(C,E,B,R_1,pos=1,parity=1,debt=0)`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},R_{},pos={},parity={},debt={})",
            self.pattern,
            self.regime.number(),
            self.pos,
            self.parity,
            self.debt
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_parse() {
        let p: Pattern = "C,E,B".parse().unwrap();
        assert_eq!(p.0, [Letter::C, Letter::E, Letter::B]);
        assert_eq!(p.to_string(), "C,E,B");
        assert!("C,E".parse::<Pattern>().is_err());
        assert!("C,E,F".parse::<Pattern>().is_err());
        assert!("C,EE,B".parse::<Pattern>().is_err());
    }

    #[test]
    fn display_matches_listing() {
        let ctx = Context {
            id: 0,
            pattern: "C,E,B".parse().unwrap(),
            regime: Regime::R1,
            pos: 1,
            parity: 1,
            debt: Debt::Zero,
        };
        assert_eq!(ctx.to_string(), "(C,E,B,R_1,pos=1,parity=1,debt=0)");
    }
}
