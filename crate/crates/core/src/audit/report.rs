use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Duration;

use serde::Serialize;

use super::grid::GridSpec;

/// Named coordinates of one examined tuple, as decimal strings.
pub type Tuple = BTreeMap<String, String>;

pub(crate) fn tuple(pairs: &[(&str, &dyn Display)]) -> Tuple {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub tuple: Tuple,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub tuple: Tuple,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Pass,
    Fail(Violation),
    Skip(Rejection),
}

impl Outcome {
    pub(crate) fn fail(tuple: Tuple, detail: impl Into<String>) -> Self {
        Outcome::Fail(Violation {
            tuple,
            detail: detail.into(),
        })
    }

    pub(crate) fn skip(tuple: Tuple, reason: impl Into<String>) -> Self {
        Outcome::Skip(Rejection {
            tuple,
            reason: reason.into(),
        })
    }

    pub(crate) fn expect(ok: bool, tuple: Tuple, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::fail(tuple, detail())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub artifact_version: String,
    /// Examined plus rejected.
    pub tuples_total: u64,
    pub tuples_examined: u64,
    pub rejected: Vec<Rejection>,
    pub violations: Vec<Violation>,
    pub grid: GridSpec,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl CheckReport {
    pub(crate) fn from_outcomes(check: &str, grid: &GridSpec, outcomes: Vec<Outcome>) -> Self {
        let mut examined = 0u64;
        let mut rejected = Vec::new();
        let mut violations = Vec::new();
        for o in outcomes {
            match o {
                Outcome::Pass => examined += 1,
                Outcome::Fail(v) => {
                    examined += 1;
                    violations.push(v);
                }
                Outcome::Skip(r) => rejected.push(r),
            }
        }
        CheckReport {
            check: check.to_string(),
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            tuples_total: examined + rejected.len() as u64,
            tuples_examined: examined,
            rejected,
            violations,
            grid: grid.clone(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One line of the combined summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub check: String,
    pub tuples_total: u64,
    pub tuples_examined: u64,
    pub rejected: u64,
    pub violations: u64,
    pub passed: bool,
}

impl From<&CheckReport> for SummaryRow {
    fn from(r: &CheckReport) -> Self {
        SummaryRow {
            check: r.check.clone(),
            tuples_total: r.tuples_total,
            tuples_examined: r.tuples_examined,
            rejected: r.rejected.len() as u64,
            violations: r.violations.len() as u64,
            passed: r.passed(),
        }
    }
}
