//! Verification suites and report emission.
//!
//! Each suite checks one group of results on its smallest faithful
//! finite-dimensional instance and emits one [`CheckResult`] per check.
//! Suites are deterministic for a fixed `(seed, budget)`.

mod report;
mod suites;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use report::{emit_report, to_csv, to_json, ReportFormat, CSV_HEADER};
pub use suites::{bounded_family, random_point, COVERAGE};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("nothing to report")]
    EmptyReport,
    #[error("writing {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("serializing report: {0}")]
    Serialize(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

fn finite_or_null<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    if v.is_finite() {
        s.serialize_f64(*v)
    } else {
        s.serialize_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    #[serde(skip)]
    pub suite: String,
    pub check: String,
    pub status: Status,
    #[serde(serialize_with = "finite_or_null")]
    pub value: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub bound: f64,
    #[serde(serialize_with = "finite_or_null")]
    pub tolerance: f64,
    pub details: String,
}

impl CheckResult {
    fn new(suite: &str, check: &str, pass: bool, value: f64, bound: f64, tolerance: f64, details: String) -> Self {
        CheckResult {
            suite: suite.to_string(),
            check: check.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            value,
            bound,
            tolerance,
            details,
        }
    }

    /// Passes when `value ≤ bound + tolerance`.
    pub fn at_most(suite: &str, check: &str, value: f64, bound: f64, tolerance: f64, details: impl Into<String>) -> Self {
        let pass = value <= bound + tolerance;
        Self::new(suite, check, pass, value, bound, tolerance, details.into())
    }

    /// Passes when `value ≥ bound − tolerance`.
    pub fn at_least(suite: &str, check: &str, value: f64, bound: f64, tolerance: f64, details: impl Into<String>) -> Self {
        let pass = value >= bound - tolerance;
        Self::new(suite, check, pass, value, bound, tolerance, details.into())
    }

    /// Passes when `|value − bound| ≤ tolerance`.
    pub fn close(suite: &str, check: &str, value: f64, expected: f64, tolerance: f64, details: impl Into<String>) -> Self {
        let pass = (value - expected).abs() <= tolerance;
        Self::new(suite, check, pass, value, expected, tolerance, details.into())
    }

    pub fn skipped(suite: &str, check: &str, details: impl Into<String>) -> Self {
        CheckResult {
            suite: suite.to_string(),
            check: check.to_string(),
            status: Status::Skipped,
            value: f64::NAN,
            bound: f64::NAN,
            tolerance: f64::NAN,
            details: details.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(seed: u64, suites: Vec<SuiteReport>) -> Self {
        Report { version: 1, seed, suites }
    }

    pub fn checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.suites.iter().flat_map(|s| s.checks.iter())
    }

    pub fn any_failed(&self) -> bool {
        self.checks().any(|c| c.status == Status::Fail)
    }
}

/// Suite identifiers accepted by [`run_suite`], in run order.
pub const SUITES: &[&str] = &[
    "classical",
    "schwarz",
    "schwarz_pick",
    "hinfty_nat",
    "hinfty_inv",
    "bidisc_separation",
    "lp_separation",
    "unbounded_bloch",
    "metric",
    "chain_rule",
    "numerics",
];

pub fn run_suite(name: &str, seed: u64, budget: usize) -> Result<Vec<CheckResult>, HarnessError> {
    let budget = budget.max(1);
    let checks = match name {
        "classical" => suites::classical(seed, budget),
        "schwarz" => suites::schwarz(seed),
        "schwarz_pick" => suites::schwarz_pick(seed),
        "hinfty_nat" => suites::hinfty_nat(seed, budget),
        "hinfty_inv" => suites::hinfty_inv(seed, budget),
        "bidisc_separation" => suites::bidisc_separation(seed, budget),
        "lp_separation" => suites::lp_separation(seed, budget),
        "unbounded_bloch" => suites::unbounded_bloch(seed, budget),
        "metric" => suites::metric(seed, budget),
        "chain_rule" => suites::chain_rule(seed),
        "numerics" => suites::numerics(seed, budget),
        other => return Err(HarnessError::UnknownSuite(other.to_string())),
    };
    Ok(checks)
}

/// Runs one suite, or every suite for `"all"`.
pub fn run(selection: &str, seed: u64, budget: usize) -> Result<Report, HarnessError> {
    let names: Vec<&str> = if selection == "all" {
        SUITES.to_vec()
    } else {
        vec![selection]
    };
    let mut out = Vec::new();
    for name in names {
        out.push(SuiteReport {
            name: name.to_string(),
            checks: run_suite(name, seed, budget)?,
        });
    }
    Ok(Report::new(seed, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", 0, 10), Err(HarnessError::UnknownSuite(_))));
        assert!(run("nope", 0, 10).is_err());
    }

    #[test]
    fn every_listed_result_has_a_check() {
        let mut by_suite = std::collections::BTreeMap::new();
        for &(result, suite, prefix) in COVERAGE {
            assert!(SUITES.contains(&suite), "{result}: unknown suite {suite}");
            let checks = by_suite
                .entry(suite)
                .or_insert_with(|| run_suite(suite, 1, 256).unwrap());
            assert!(
                checks.iter().any(|c| c.check.starts_with(prefix) && c.suite == suite),
                "{result}: no check {prefix} in {suite}"
            );
        }
        // and every suite witnesses something
        for s in SUITES {
            if *s != "numerics" {
                assert!(COVERAGE.iter().any(|c| c.1 == *s), "suite {s} covers nothing");
            }
        }
    }

    #[test]
    fn check_names_are_unique_within_a_suite() {
        for s in ["schwarz", "metric", "chain_rule", "lp_separation"] {
            let checks = run_suite(s, 3, 128).unwrap();
            let mut names: Vec<&str> = checks.iter().map(|c| c.check.as_str()).collect();
            let n = names.len();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), n, "{s}");
        }
    }

    #[test]
    fn comparisons() {
        assert!(CheckResult::at_most("s", "c", 1.0 + 1e-9, 1.0, 1e-8, "").passed());
        assert!(!CheckResult::at_most("s", "c", 1.1, 1.0, 1e-8, "").passed());
        assert!(!CheckResult::at_most("s", "c", f64::NAN, 1.0, 1e-8, "").passed());
        assert!(CheckResult::at_least("s", "c", 2.0, 2.0, 0.0, "").passed());
        assert!(!CheckResult::close("s", "c", 1.0, 2.0, 0.5, "").passed());
        assert!(CheckResult::skipped("s", "c", "why").passed());
    }
}
