use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::ConfigEcho;
use crate::error::{Error, Result};
use crate::minimal::AuditSummary;
use crate::report::InequalityReport;
use crate::tolerance::Tolerances;

/// Which side of the inequality should be larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// `lhs ≤ rhs`.
    AtMost,
    /// `lhs ≥ rhs`.
    AtLeast,
    /// `lhs = rhs`.
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub count: usize,
    pub failures: usize,
    pub min_margin: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub cases: usize,
    pub checks: BTreeMap<String, CheckSummary>,
    pub min_margin: f64,
    pub failures: Vec<InequalityReport>,
    /// Cases that could not be evaluated.
    pub errors: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }
}

/// Collects margins for one suite. Instance descriptions are only formatted
/// for failing checks.
#[derive(Debug)]
pub struct SuiteAccumulator<'a> {
    tolerances: &'a Tolerances,
    cases: usize,
    checks: BTreeMap<String, CheckSummary>,
    failures: Vec<InequalityReport>,
    errors: Vec<String>,
}

impl<'a> SuiteAccumulator<'a> {
    pub fn new(tolerances: &'a Tolerances) -> Self {
        SuiteAccumulator { tolerances, cases: 0, checks: BTreeMap::new(), failures: Vec::new(), errors: Vec::new() }
    }

    pub fn case(&mut self) {
        self.cases += 1;
    }

    /// Records `lhs` against `rhs` under the tolerance registered for `key`.
    pub fn margin(&mut self, key: &str, sense: Sense, lhs: f64, rhs: f64, instance: impl FnOnce() -> String) {
        let tol = self.tolerances.get(key);
        let report = match sense {
            Sense::AtMost => InequalityReport::at_most(key, String::new(), lhs, rhs, tol),
            Sense::AtLeast => InequalityReport::at_least(key, String::new(), lhs, rhs, tol),
            Sense::Equal => InequalityReport::equality(key, String::new(), lhs, rhs, tol),
        };
        self.push(key, report, instance);
    }

    /// Records a strict lower threshold: passes iff `value > tolerance(key)`;
    /// the margin is `value − tolerance(key)`.
    pub fn exceeds(&mut self, key: &str, value: f64, instance: impl FnOnce() -> String) {
        let threshold = self.tolerances.get(key);
        let mut report = InequalityReport::at_least(key, String::new(), value, threshold, 0.0);
        report.pass = value > threshold;
        self.push(key, report, instance);
    }

    /// Records a library report, re-judged with the configured tolerance for `key`.
    pub fn report(&mut self, key: &str, report: InequalityReport) {
        let report = report.with_tolerance(self.tolerances.get(key));
        let instance = report.instance.clone();
        self.push(key, report, || instance);
    }

    fn push(&mut self, key: &str, mut report: InequalityReport, instance: impl FnOnce() -> String) {
        let entry = self.checks.entry(key.to_string()).or_insert(CheckSummary {
            count: 0,
            failures: 0,
            min_margin: f64::INFINITY,
            tolerance: report.tolerance,
        });
        entry.count += 1;
        let margin = if report.margin.is_nan() { f64::NEG_INFINITY } else { report.margin };
        entry.min_margin = entry.min_margin.min(margin);
        if !report.pass {
            entry.failures += 1;
            report.instance = instance();
            self.failures.push(report);
        }
    }

    pub fn error(&mut self, context: impl FnOnce() -> String, err: Error) {
        self.errors.push(format!("{}: {err}", context()));
    }

    pub fn finish(self) -> SuiteReport {
        let min_margin = self.checks.values().map(|c| c.min_margin).fold(f64::INFINITY, f64::min);
        SuiteReport { cases: self.cases, checks: self.checks, min_margin, failures: self.failures, errors: self.errors }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BallFindings {
    /// Largest `(oracle − formula)/oracle` for the closed-form operator norm at random points.
    pub opnorm_formula_max_undershoot: f64,
    /// Largest `quotient − ‖φ_a(w)‖` for `m ≥ 2` (zero exactly when `w ∥ a`).
    pub quotient_max_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HoloFindings {
    /// Samples where the two-sided lower bound is evaluated but not asserted
    /// (`m ≥ 2`, `F(z)/z` not parallel to `F'(0)`).
    pub two_sided_lower_unasserted_samples: usize,
    /// Smallest lower-bound margin over those samples.
    pub two_sided_lower_unasserted_min_margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimalFindings {
    pub metric_audit: AuditSummary,
    /// Largest `d_P − d_CK` on the flat central disk for pairs on a common diameter.
    pub planar_diameter_max_gap: f64,
    /// Largest `d_P − d_CK` on the flat central disk for unrestricted pairs.
    pub planar_general_max_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSummary {
    pub name: String,
    pub restarts: usize,
    pub best_margin: f64,
    pub argmin: Vec<f64>,
    pub best_restart: usize,
    pub min_evaluated: f64,
    pub restart_minima: Vec<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Findings {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallFindings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holo: Option<HoloFindings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal: Option<MinimalFindings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub search: Option<Vec<SearchSummary>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub config: ConfigEcho,
    pub suites: BTreeMap<String, SuiteReport>,
    pub findings: Findings,
    pub pass: bool,
    /// Seconds per suite; kept out of the JSON report so that it stays byte-identical.
    #[serde(skip)]
    pub wall_time: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// `suite,check,count,failures,min_margin,tolerance`.
    pub fn margin_table(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "check", "count", "failures", "min_margin", "tolerance"])?;
        for (suite, rep) in &self.suites {
            for (check, s) in &rep.checks {
                w.write_record([
                    suite.clone(),
                    check.clone(),
                    s.count.to_string(),
                    s.failures.to_string(),
                    format!("{:e}", s.min_margin),
                    format!("{:e}", s.tolerance),
                ])?;
            }
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    pub fn timing_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.wall_time)? + "\n")
    }

    /// Writes `report.json`, `margins.csv` and `timing.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        let files = [
            ("report.json", self.to_json()?),
            ("margins.csv", self.margin_table()?),
            ("timing.json", self.timing_json()?),
        ];
        let mut written = Vec::new();
        for (name, body) in files {
            let path = dir.join(name);
            std::fs::write(&path, body).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }
}
