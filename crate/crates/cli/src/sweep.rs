//! Batch classification over a grid of `(r, d, t)` cells.
//!
//! Cells are enumerated in `(r, d, t)` lexicographic order; evaluation may
//! run in parallel but records are always emitted in input order, so
//! identical invocations produce identical output (the per-record timing
//! field is excluded from that contract and from cache hashing).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::Instant;

use k3fm::classifier::{self, Classification, HilbReport, IndeterminacyReport};

/// Inclusive integer interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Range {
    pub lo: i64,
    pub hi: i64,
}

impl std::str::FromStr for Range {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(Range { lo, hi })
    }
}

/// Which fiber-degree values to pair with each rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DPolicy {
    AllCoprime,
    Fixed(i64),
}

impl std::str::FromStr for DPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all-coprime" {
            return Ok(DPolicy::AllCoprime);
        }
        s.parse::<i64>()
            .map(DPolicy::Fixed)
            .map_err(|_| format!("`{s}`: expected `all-coprime` or an integer"))
    }
}

/// A sweep request; hashing this (plus the artifact version) keys the cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub r_range: Range,
    pub t_range: Range,
    pub d_policy: DPolicy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputTriple {
    pub r: i64,
    pub d: i64,
    pub t: i64,
}

/// One classified cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub input: InputTriple,
    pub classification: Classification,
    pub hilb: HilbReport,
    /// Present exactly in the flop regime `r <= t < r + d`.
    pub indeterminacy: Option<IndeterminacyReport>,
    /// Wall-clock evaluation time; excluded from the determinism contract.
    pub micros: u64,
}

impl SweepSpec {
    /// Enumerate the admissible cells in output order. Inadmissible fixed-`d`
    /// ranks are skipped and reported through `notice`.
    pub fn cells(&self, mut notice: impl FnMut(String)) -> Vec<InputTriple> {
        let mut cells = Vec::new();
        for r in self.r_range.lo.max(2)..=self.r_range.hi {
            let ds: Vec<i64> = match self.d_policy {
                DPolicy::AllCoprime => {
                    (1..r).filter(|&d| num_integer::gcd(r, d) == 1).collect()
                }
                DPolicy::Fixed(d) => {
                    if d <= 0 || d >= r || num_integer::gcd(r, d) != 1 {
                        notice(format!("skipping r={r}: fixed d={d} is not admissible"));
                        vec![]
                    } else {
                        vec![d]
                    }
                }
            };
            for d in ds {
                for t in self.t_range.lo.max(0)..=self.t_range.hi {
                    cells.push(InputTriple { r, d, t });
                }
            }
        }
        cells
    }
}

/// Classify one cell. The inputs come from `cells`, so the unwraps cannot
/// fire on admissible grids.
pub fn evaluate(cell: InputTriple) -> ResultRecord {
    let started = Instant::now();
    let classification = classifier::classify(cell.r, cell.d, cell.t)
        .expect("sweep cells are validated during enumeration");
    let hilb = classifier::hilb_compare(cell.r, cell.d, cell.t)
        .expect("sweep cells are validated during enumeration");
    let indeterminacy = classifier::indeterminacy(cell.r, cell.d, cell.t).ok();
    ResultRecord {
        input: cell,
        classification,
        hilb,
        indeterminacy,
        micros: started.elapsed().as_micros() as u64,
    }
}

/// Evaluate every cell, in parallel, preserving input order.
pub fn run(cells: Vec<InputTriple>) -> Vec<ResultRecord> {
    cells.into_par_iter().map(evaluate).collect()
}

pub const CSV_HEADER: &str = "r,d,t,verdict,l,a,iso_to_hilb,codim,conjectural";

/// Fixed-order CSV row; `codim` is empty outside the flop regime.
pub fn csv_row(rec: &ResultRecord) -> String {
    let codim = rec
        .indeterminacy
        .as_ref()
        .map(|i| i.codim.to_string())
        .unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{},{},{}",
        rec.input.r,
        rec.input.d,
        rec.input.t,
        rec.classification.verdict,
        rec.hilb.l,
        rec.hilb.bridgeland_a,
        rec.hilb.iso_to_hilb,
        codim,
        rec.classification.conjectural_counterexample,
    )
}
