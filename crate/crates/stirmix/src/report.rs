//! Verification reports: deterministic JSON and an aligned text view.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::harness::{run_suite, CaseResult, Grid, Status, EXPECTED_FLAGGED};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub engine_version: String,
    pub grid: Grid,
    pub cases: Vec<CaseResult>,
    /// Seconds since the Unix epoch; excluded from [`Self::digest`].
    pub timestamp: u64,
}

// The deterministic part of a report.
#[derive(Serialize)]
struct Canonical<'a> {
    engine_version: &'a str,
    grid: &'a Grid,
    cases: &'a [CaseResult],
}

impl VerificationReport {
    pub fn run(grid: &Grid) -> Self {
        VerificationReport {
            engine_version: ENGINE_VERSION.to_string(),
            grid: grid.clone(),
            cases: run_suite(grid),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Flagged cases that are not on the expected list.
    pub fn unexpected_failures(&self) -> Vec<&CaseResult> {
        self.cases
            .iter()
            .filter(|c| c.status == Status::Flagged && !EXPECTED_FLAGGED.contains(&c.id.as_str()))
            .collect()
    }

    pub fn canonical_json(&self) -> String {
        let canonical = Canonical {
            engine_version: &self.engine_version,
            grid: &self.grid,
            cases: &self.cases,
        };
        serde_json::to_string(&canonical).expect("report is serializable")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().as_bytes()))
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct WithDigest<'a> {
            #[serde(flatten)]
            report: &'a VerificationReport,
            digest: String,
        }
        let out = WithDigest {
            report: self,
            digest: self.digest(),
        };
        serde_json::to_string_pretty(&out).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let g = &self.grid;
        let bound = |m: &Option<usize>| m.map_or_else(|| "inf".to_string(), |m| m.to_string());
        let uppers: Vec<String> = g.upper_bounds.iter().map(bound).collect();
        let lowers: Vec<String> = g.lower_bounds.iter().map(|l| l.to_string()).collect();
        let mut out = String::new();
        let _ = writeln!(out, "stirmix {} verification", self.engine_version);
        let _ = writeln!(
            out,
            "grid: n<={} k<={} r<={} m in {{{}}} l in {{{}}} oracle cap {}",
            g.max_n,
            g.max_k,
            g.max_r,
            uppers.join(","),
            lowers.join(","),
            g.oracle_cap
        );
        let _ = writeln!(out, "digest: {}", self.digest());
        out.push('\n');

        let id_width = self
            .cases
            .iter()
            .map(|c| c.id.len())
            .max()
            .unwrap_or(2)
            .max(2);
        let _ = writeln!(
            out,
            "{:<id_width$}  {:<7}  {:>7}  {:>6}",
            "id", "status", "checked", "failed"
        );
        for c in &self.cases {
            let marker =
                if c.status == Status::Flagged && !EXPECTED_FLAGGED.contains(&c.id.as_str()) {
                    "  UNEXPECTED"
                } else {
                    ""
                };
            let _ = writeln!(
                out,
                "{:<id_width$}  {:<7}  {:>7}  {:>6}{marker}",
                c.id,
                c.status.to_string(),
                c.points_checked,
                c.points_failed
            );
        }

        let flagged: Vec<&CaseResult> = self
            .cases
            .iter()
            .filter(|c| c.status == Status::Flagged)
            .collect();
        if !flagged.is_empty() {
            out.push_str("\ncounterexamples (first three per case):\n");
            for c in flagged {
                let _ = writeln!(out, "{}: {}", c.id, c.claim);
                for ce in c.counterexamples.iter().take(3) {
                    let _ = writeln!(out, "  at {}: lhs {} rhs {}", ce.params, ce.lhs, ce.rhs);
                }
            }
        }
        let passed = self
            .cases
            .iter()
            .filter(|c| c.status == Status::Pass)
            .count();
        let _ = writeln!(
            out,
            "\n{passed} passed, {} flagged ({} unexpected)",
            self.cases.len() - passed,
            self.unexpected_failures().len()
        );
        out
    }
}
