//! Executable check catalogue with a pass/fail report.

mod checks;

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::capacity::CapacityOptions;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Fast,
    Full,
}

impl FromStr for Profile {
    type Err = VerifyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            other => Err(VerifyError::UnknownProfile(other.to_string())),
        }
    }
}

/// Deliberate defects used to confirm the harness can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Compares the disk energy against `pi / (4a)` instead of `pi / (2a)`.
    WrongDiskFormula,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub profile: Profile,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { profile: Profile::Fast, seed: DEFAULT_SEED, fault: None }
    }
}

impl VerifyConfig {
    /// Meshes for checks against closed forms.
    pub(crate) fn accurate(&self) -> CapacityOptions {
        match self.profile {
            Profile::Fast => CapacityOptions::standard(),
            Profile::Full => CapacityOptions::fine(),
        }
    }

    /// Meshes for inequality checks over many random shapes.
    pub(crate) fn survey(&self) -> CapacityOptions {
        match self.profile {
            Profile::Fast => CapacityOptions::coarse(),
            Profile::Full => CapacityOptions::standard(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("unknown check '{name}'; known checks: {}", .known.join(", "))]
    UnknownCheck { name: String, known: Vec<&'static str> },
    #[error("unknown profile '{0}' (expected fast or full)")]
    UnknownProfile(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// How `measured` is compared with `target`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `|measured - target| <= tolerance`.
    Within,
    /// `measured <= target + tolerance`.
    AtMost,
    /// `measured >= target - tolerance`.
    AtLeast,
    /// `measured < target`.
    Below,
    /// `measured > target`.
    Above,
}

impl Relation {
    pub fn holds(self, measured: f64, target: f64, tolerance: f64) -> bool {
        match self {
            Relation::Within => (measured - target).abs() <= tolerance,
            Relation::AtMost => measured <= target + tolerance,
            Relation::AtLeast => measured >= target - tolerance,
            Relation::Below => measured < target,
            Relation::Above => measured > target,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Within => "within",
            Relation::AtMost => "at-most",
            Relation::AtLeast => "at-least",
            Relation::Below => "below",
            Relation::Above => "above",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub detail: String,
    pub runtime: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Raw outcome of a check before timing and naming.
#[derive(Clone, Debug)]
pub(crate) struct Outcome {
    pub measured: f64,
    pub target: f64,
    pub tolerance: f64,
    pub relation: Relation,
    pub detail: String,
    /// Extra conditions that must hold beyond the scalar comparison.
    pub side_conditions: bool,
}

impl Outcome {
    pub fn new(measured: f64, target: f64, tolerance: f64, relation: Relation) -> Self {
        Self { measured, target, tolerance, relation, detail: String::new(), side_conditions: true }
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn require(mut self, ok: bool) -> Self {
        self.side_conditions &= ok;
        self
    }
}

type CheckFn = fn(&VerifyConfig) -> Result<Outcome, String>;

pub(crate) struct CatalogueEntry {
    pub id: &'static str,
    pub run: CheckFn,
}

/// Check identifiers in report order.
pub fn catalogue() -> Vec<&'static str> {
    checks::CATALOGUE.iter().map(|e| e.id).collect()
}

fn finish(id: &str, started: Instant, outcome: Result<Outcome, String>) -> CheckResult {
    let runtime = started.elapsed();
    match outcome {
        Ok(o) => {
            let ok = o.side_conditions
                && o.measured.is_finite()
                && o.relation.holds(o.measured, o.target, o.tolerance);
            CheckResult {
                name: id.to_string(),
                status: if ok { Status::Pass } else { Status::Fail },
                measured: o.measured,
                target: o.target,
                tolerance: o.tolerance,
                relation: o.relation,
                detail: o.detail,
                runtime,
            }
        }
        Err(e) => CheckResult {
            name: id.to_string(),
            status: Status::Fail,
            measured: f64::NAN,
            target: f64::NAN,
            tolerance: f64::NAN,
            relation: Relation::Within,
            detail: format!("error: {e}"),
            runtime,
        },
    }
}

pub fn run_check(name: &str, config: &VerifyConfig) -> Result<CheckResult, VerifyError> {
    let entry = checks::CATALOGUE
        .iter()
        .find(|e| e.id == name)
        .ok_or_else(|| VerifyError::UnknownCheck { name: name.to_string(), known: catalogue() })?;
    let started = Instant::now();
    Ok(finish(entry.id, started, (entry.run)(config)))
}

/// Every catalogue check, concurrently, reported in catalogue order.
pub fn run_all(config: &VerifyConfig) -> Vec<CheckResult> {
    checks::CATALOGUE
        .par_iter()
        .map(|e| {
            let started = Instant::now();
            finish(e.id, started, (e.run)(config))
        })
        .collect()
}

fn number(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.12e}")
    }
}

pub const REPORT_HEADER: [&str; 7] = ["name", "status", "measured", "target", "tolerance", "relation", "detail"];
pub const REPORT_HEADER_TIMED: [&str; 8] =
    ["name", "status", "measured", "target", "tolerance", "relation", "detail", "runtime_s"];

/// Report cells for one result; the runtime column only on request since it
/// varies between runs.
pub fn report_row(r: &CheckResult, timings: bool) -> Vec<String> {
    let mut row = vec![
        r.name.clone(),
        r.status.to_string(),
        number(r.measured),
        number(r.target),
        number(r.tolerance),
        r.relation.symbol().to_string(),
        r.detail.clone(),
    ];
    if timings {
        row.push(format!("{:.3}", r.runtime.as_secs_f64()));
    }
    row
}

/// One CSV row per result.
pub fn write_report<W: Write>(out: W, results: &[CheckResult], timings: bool) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if timings {
        w.write_record(REPORT_HEADER_TIMED)?;
    } else {
        w.write_record(REPORT_HEADER)?;
    }
    for r in results {
        w.write_record(report_row(r, timings))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relations() {
        assert!(Relation::Within.holds(1.0, 1.05, 0.1));
        assert!(!Relation::Within.holds(1.0, 1.2, 0.1));
        assert!(Relation::AtMost.holds(1.1, 1.0, 0.1));
        assert!(!Relation::Below.holds(0.0, 0.0, 1.0));
        assert!(Relation::Above.holds(1e-300, 0.0, 0.0));
    }

    #[test]
    fn unknown_check_lists_catalogue() {
        let err = run_check("no-such-check", &VerifyConfig::default()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("disk-capacity") && msg.contains("g-certificate"));
    }

    #[test]
    fn catalogue_ids_unique() {
        let mut ids = catalogue();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn errors_become_failures() {
        let r = finish("x", Instant::now(), Err("boom".into()));
        assert_eq!(r.status, Status::Fail);
        assert!(r.detail.contains("boom"));
    }
}
