//! Bottom-up evaluation of Q(n) = Q(n - Q(n-1)) + Q(n - Q(n-2)) + (-1)^n.
//!
//! Values live in a flat table indexed by `n`. Every step checks that both
//! recursive arguments are at least 1, which is exactly the well-definedness
//! property of the recursion.

use std::collections::HashMap;
use std::io::{self, Write};

use serde::Serialize;

use crate::error::{Error, Result};

/// One evaluated term together with the arguments it was computed from.
///
/// `arg1` and `arg2` are `None` for the seeded prefix (n <= 2 for the
/// standard seeds), where the recursion is not applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceRecord {
    pub n: u64,
    pub q: u64,
    pub arg1: Option<i64>,
    pub arg2: Option<i64>,
    pub perturbation: i8,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioSample {
    pub n: u64,
    pub q: u64,
    pub ratio: f64,
}

impl RatioSample {
    fn new(n: u64, q: u64) -> Self {
        Self {
            n,
            q,
            ratio: q as f64 / n as f64,
        }
    }
}

/// Result of a streaming well-definedness scan.
///
/// On a violation the scan stops growing the table: `computed_to` is the
/// last index with a value and `truncated` is set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub n_max: u64,
    pub computed_to: u64,
    pub truncated: bool,
    pub violation_count: u64,
    pub first_violation: Option<u64>,
    pub ratio_final: RatioSample,
    pub ratio_samples: Vec<RatioSample>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("n_max: {}\n", self.n_max));
        out.push_str(&format!("computed_to: {}\n", self.computed_to));
        out.push_str(&format!("violations: {}\n", self.violation_count));
        if let Some(n) = self.first_violation {
            out.push_str(&format!("first_violation: {n}\n"));
            out.push_str("note: table truncated at the first violation\n");
        }
        out.push_str(&format!(
            "ratio_final: Q({})/{} = {}/{} = {:.6}\n",
            self.ratio_final.n,
            self.ratio_final.n,
            self.ratio_final.q,
            self.ratio_final.n,
            self.ratio_final.ratio
        ));
        out.push_str("ratio_samples:\n");
        for s in &self.ratio_samples {
            out.push_str(&format!("  {} {} {:.6}\n", s.n, s.q, s.ratio));
        }
        out
    }
}

/// First index at which two evaluations of the sequence disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Divergence {
    pub n: u64,
    pub table: Option<u64>,
    pub naive: Option<u64>,
}

/// Recursion with configurable seed values. The default seeds are
/// Q(1) = Q(2) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceEngine {
    seeds: Vec<u64>,
}

impl Default for SequenceEngine {
    fn default() -> Self {
        Self { seeds: vec![1, 1] }
    }
}

/// Outcome of a single recursion step.
enum Step {
    Value(u64),
    Violation { arg1: i64, arg2: i64 },
}

#[inline]
fn perturbation(n: u64) -> i8 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `values` is 1-based: `values[0]` is a placeholder.
#[inline]
fn step(values: &[u64], n: u64) -> Step {
    let n_i = n as i64;
    let arg1 = n_i - values[(n - 1) as usize] as i64;
    let arg2 = n_i - values[(n - 2) as usize] as i64;
    if arg1 < 1 || arg2 < 1 {
        return Step::Violation { arg1, arg2 };
    }
    let sum = values[arg1 as usize] + values[arg2 as usize];
    // both terms are >= 1, so the sum is >= 2 and the odd-n decrement stays positive
    Step::Value(if n.is_multiple_of(2) { sum + 1 } else { sum - 1 })
}

impl SequenceEngine {
    /// Seeds must be non-empty, at least two long, and all positive.
    pub fn with_seeds(seeds: Vec<u64>) -> Result<Self> {
        if seeds.len() < 2 {
            return Err(Error::SequenceTooShort {
                min: 2,
                got: seeds.len() as u64,
            });
        }
        if let Some(pos) = seeds.iter().position(|&v| v == 0) {
            return Err(Error::WellDefinednessViolation {
                n: pos as u64 + 1,
                arg1: 0,
                arg2: 0,
            });
        }
        Ok(Self { seeds })
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    fn seed_len(&self) -> u64 {
        self.seeds.len() as u64
    }

    fn initial_table(&self, n_max: u64) -> Vec<u64> {
        let mut values = Vec::with_capacity(n_max as usize + 1);
        values.push(0);
        values.extend(self.seeds.iter().take(n_max as usize));
        values
    }

    /// Fail-fast evaluation of Q(1..=n_max).
    pub fn table(&self, n_max: u64) -> Result<QTable> {
        if n_max < 1 {
            return Err(Error::SequenceTooShort { min: 1, got: n_max });
        }
        let mut values = self.initial_table(n_max);
        for n in (self.seed_len() + 1)..=n_max {
            match step(&values, n) {
                Step::Value(q) => values.push(q),
                Step::Violation { arg1, arg2 } => {
                    return Err(Error::WellDefinednessViolation { n, arg1, arg2 })
                }
            }
        }
        Ok(QTable {
            values,
            seed_len: self.seed_len(),
        })
    }

    pub fn q_values(&self, n_max: u64) -> Result<Vec<SequenceRecord>> {
        let table = self.table(n_max)?;
        Ok((1..=n_max).map(|n| table.record(n).expect("in range")).collect())
    }

    /// Streams the recursion up to `n_max`, counting violations instead of
    /// failing. Growth halts at the first violation.
    pub fn scan(&self, n_max: u64, ratio_stride: u64) -> Result<ScanReport> {
        if n_max < 2 {
            return Err(Error::SequenceTooShort { min: 2, got: n_max });
        }
        let stride = ratio_stride.max(1);
        let mut values = self.initial_table(n_max);
        let mut samples = Vec::new();
        let mut first_violation = None;

        for n in 1..=n_max {
            if n > self.seed_len() {
                match step(&values, n) {
                    Step::Value(q) => values.push(q),
                    Step::Violation { .. } => {
                        first_violation = Some(n);
                        break;
                    }
                }
            }
            if n % stride == 0 && n < n_max {
                samples.push(RatioSample::new(n, values[n as usize]));
            }
        }

        let computed_to = values.len() as u64 - 1;
        let ratio_final = RatioSample::new(computed_to, values[computed_to as usize]);
        if samples.last().map(|s| s.n) != Some(computed_to) {
            samples.push(ratio_final);
        }

        Ok(ScanReport {
            n_max,
            computed_to,
            truncated: first_violation.is_some(),
            violation_count: u64::from(first_violation.is_some()),
            first_violation,
            ratio_final,
            ratio_samples: samples,
        })
    }
}

/// Immutable table of Q(1..=len). Safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QTable {
    values: Vec<u64>,
    seed_len: u64,
}

impl QTable {
    pub fn len(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        if n == 0 {
            return None;
        }
        self.values.get(n as usize).copied()
    }

    /// Values Q(1), Q(2), ... as a slice (index 0 holds Q(1)).
    pub fn values(&self) -> &[u64] {
        &self.values[1..]
    }

    pub fn record(&self, n: u64) -> Option<SequenceRecord> {
        let q = self.get(n)?;
        let (arg1, arg2) = if n <= self.seed_len {
            (None, None)
        } else {
            let n_i = n as i64;
            (
                Some(n_i - self.values[(n - 1) as usize] as i64),
                Some(n_i - self.values[(n - 2) as usize] as i64),
            )
        };
        Some(SequenceRecord {
            n,
            q,
            arg1,
            arg2,
            perturbation: perturbation(n),
        })
    }

    /// OEIS b-file lines: `n Q(n)`.
    pub fn write_bfile<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (i, q) in self.values().iter().enumerate() {
            writeln!(w, "{} {}", i + 1, q)?;
        }
        Ok(())
    }
}

pub const CSV_HEADER: &str = "n,q,arg1,arg2,perturbation";

/// CSV with header `n,q,arg1,arg2,perturbation`; seeded rows leave the
/// argument columns empty.
pub fn write_csv<W: Write>(records: &[SequenceRecord], mut w: W) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let opt = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.n,
            r.q,
            opt(r.arg1),
            opt(r.arg2),
            r.perturbation
        )?;
    }
    Ok(())
}

/// Top-down memoized evaluation, used as an oracle for the table engine.
/// An explicit work stack replaces native recursion so deep chains cannot
/// overflow. Returns `None` if some argument falls below 1.
pub struct NaiveQ {
    seeds: Vec<u64>,
    memo: HashMap<u64, Option<u64>>,
}

impl NaiveQ {
    pub fn new(seeds: &[u64]) -> Self {
        Self {
            seeds: seeds.to_vec(),
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, target: u64) -> Option<u64> {
        if target == 0 {
            return None;
        }
        let mut stack = vec![target];
        while let Some(&n) = stack.last() {
            if self.memo.contains_key(&n) {
                stack.pop();
                continue;
            }
            if n == 0 {
                self.memo.insert(0, None);
                stack.pop();
                continue;
            }
            if n as usize <= self.seeds.len() {
                self.memo.insert(n, Some(self.seeds[n as usize - 1]));
                stack.pop();
                continue;
            }
            let (p1, p2) = (self.memo.get(&(n - 1)), self.memo.get(&(n - 2)));
            let (Some(&p1), Some(&p2)) = (p1, p2) else {
                stack.extend([n - 1, n - 2].into_iter().filter(|k| !self.memo.contains_key(k)));
                continue;
            };
            let (Some(p1), Some(p2)) = (p1, p2) else {
                self.memo.insert(n, None);
                stack.pop();
                continue;
            };
            let a1 = n as i64 - p1 as i64;
            let a2 = n as i64 - p2 as i64;
            if a1 < 1 || a2 < 1 {
                self.memo.insert(n, None);
                stack.pop();
                continue;
            }
            let (a1, a2) = (a1 as u64, a2 as u64);
            match (self.memo.get(&a1), self.memo.get(&a2)) {
                (Some(&v1), Some(&v2)) => {
                    let value = match (v1, v2) {
                        (Some(x), Some(y)) => {
                            let s = x as i64 + y as i64 + i64::from(perturbation(n));
                            (s >= 1).then_some(s as u64)
                        }
                        _ => None,
                    };
                    self.memo.insert(n, value);
                    stack.pop();
                }
                _ => stack.extend([a1, a2].into_iter().filter(|k| !self.memo.contains_key(k))),
            }
        }
        self.memo[&target]
    }
}

/// Compares the table engine against [`NaiveQ`] on Q(1..=n_max).
pub fn compare_with_naive(n_max: u64) -> Option<Divergence> {
    let engine = SequenceEngine::default();
    let table = engine.table(n_max).ok();
    let mut naive = NaiveQ::new(engine.seeds());
    // evaluate top-down from the far end first so the oracle really recurses
    naive.eval(n_max);
    for n in 1..=n_max {
        let t = table.as_ref().and_then(|t| t.get(n));
        let v = naive.eval(n);
        if t != v {
            return Some(Divergence {
                n,
                table: t,
                naive: v,
            });
        }
    }
    None
}

pub fn q_values(n_max: u64) -> Result<Vec<SequenceRecord>> {
    SequenceEngine::default().q_values(n_max)
}

pub fn scan_well_definedness(n_max: u64, ratio_stride: u64) -> Result<ScanReport> {
    SequenceEngine::default().scan(n_max, ratio_stride)
}

pub fn verify_against_naive(n_max: u64) -> bool {
    compare_with_naive(n_max).is_none()
}
