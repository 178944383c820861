//! Identity verification: every registered claim is evaluated on a grid of
//! parameter points, with ground truth from the partition oracle.
//!
//! Claims that fail as stated are kept under an `-as-stated` id and paired
//! with a corrected variant, so the report doubles as an errata list.

mod cases;
mod truth;

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use stirmix_core::SizeBand;

pub use cases::{registry, EXPECTED_FLAGGED};
pub use truth::{Eval, Truth};

/// Parameter ranges shared by all cases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub max_n: usize,
    pub max_k: usize,
    pub max_r: usize,
    /// Upper block-size bounds `m`; `None` is no bound.
    pub upper_bounds: Vec<Option<usize>>,
    /// Lower block-size bounds `l`.
    pub lower_bounds: Vec<usize>,
    pub oracle_cap: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            max_n: 10,
            max_k: 5,
            max_r: 5,
            upper_bounds: vec![Some(2), Some(3), Some(4), None],
            lower_bounds: vec![1, 2, 3],
            oracle_cap: stirmix_core::oracle::DEFAULT_CAP,
        }
    }
}

impl Grid {
    pub fn finite_upper_bounds(&self) -> impl Iterator<Item = usize> + '_ {
        self.upper_bounds.iter().filter_map(|m| *m)
    }
}

/// One parameter point. `None` values stand for an infinite bound.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Point(Vec<(&'static str, Option<usize>)>);

impl Point {
    pub fn new() -> Self {
        Point(Vec::new())
    }

    pub fn with(mut self, name: &'static str, value: usize) -> Self {
        self.0.push((name, Some(value)));
        self
    }

    pub fn with_bound(mut self, name: &'static str, value: Option<usize>) -> Self {
        self.0.push((name, value));
        self
    }

    fn lookup(&self, name: &str) -> Option<Option<usize>> {
        self.0.iter().find(|(k, _)| *k == name).map(|(_, v)| *v)
    }

    /// Finite parameter `name`; panics if absent, since cases only ask for
    /// parameters they generated.
    pub fn get(&self, name: &str) -> usize {
        self.lookup(name)
            .flatten()
            .unwrap_or_else(|| panic!("point {self} has no finite `{name}`"))
    }

    /// Block-size band from the optional `l` and `m` parameters.
    pub fn band(&self) -> SizeBand {
        let lo = self.lookup("l").flatten().unwrap_or(1);
        let hi = self.lookup("m").flatten();
        SizeBand::new(lo, hi).expect("grid generates valid bands")
    }

    /// Upper bound `m`, with an infinite bound resolved to `n`.
    pub fn upper_or(&self, n: usize) -> usize {
        self.lookup("m").flatten().unwrap_or(n)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match v {
                Some(v) => write!(f, "{k}={v}")?,
                None => write!(f, "{k}=inf")?,
            }
        }
        f.write_str(")")
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            match v {
                Some(v) => map.serialize_entry(k, v)?,
                None => map.serialize_entry(k, "inf")?,
            }
        }
        map.end()
    }
}

pub type Side = Box<dyn Fn(&Truth, &Point) -> Eval<BigInt> + Send + Sync>;

/// A claim `lhs = rhs` over a set of grid points.
pub struct IdentityCase {
    pub id: &'static str,
    pub claim: &'static str,
    /// How a corrected variant differs from what was stated.
    pub note: Option<&'static str>,
    pub points: Vec<Point>,
    pub lhs: Side,
    pub rhs: Side,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Flagged => "flagged",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: Point,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub status: Status,
    pub points_checked: usize,
    pub points_failed: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl CaseResult {
    pub fn counterexample_at(&self, params: &Point) -> Option<&Counterexample> {
        self.counterexamples.iter().find(|c| &c.params == params)
    }
}

fn show(v: &Eval<BigInt>) -> String {
    match v {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

pub fn evaluate(case: &IdentityCase, truth: &Truth) -> CaseResult {
    let counterexamples: Vec<Counterexample> = case
        .points
        .par_iter()
        .filter_map(|p| {
            let lhs = (case.lhs)(truth, p);
            let rhs = (case.rhs)(truth, p);
            match (&lhs, &rhs) {
                (Ok(a), Ok(b)) if a == b => None,
                _ => Some(Counterexample {
                    params: p.clone(),
                    lhs: show(&lhs),
                    rhs: show(&rhs),
                }),
            }
        })
        .collect();
    let status = if counterexamples.is_empty() && !case.points.is_empty() {
        Status::Pass
    } else {
        Status::Flagged
    };
    CaseResult {
        id: case.id.to_string(),
        claim: case.claim.to_string(),
        note: case.note.map(str::to_string),
        status,
        points_checked: case.points.len(),
        points_failed: counterexamples.len(),
        counterexamples,
    }
}

/// Evaluates every registered case on `grid`, in registration order.
pub fn run_suite(grid: &Grid) -> Vec<CaseResult> {
    run_cases(grid, &registry(grid))
}

pub fn run_cases(grid: &Grid, cases: &[IdentityCase]) -> Vec<CaseResult> {
    let truth = Truth::new(grid.oracle_cap);
    cases.par_iter().map(|c| evaluate(c, &truth)).collect()
}
