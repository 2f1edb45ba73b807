use std::io::Write;

use hypersine::ResidualReport;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// How a check's numbers are compared against its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    MaxAbsAtMost,
    MaxRelAtMost,
    /// Falsification checks: the residual must stay away from zero.
    MaxAbsAtLeast,
}

impl Criterion {
    pub fn holds(self, max_abs: f64, max_rel: f64, tolerance: f64) -> bool {
        match self {
            Criterion::MaxAbsAtMost => max_abs <= tolerance,
            Criterion::MaxRelAtMost => max_rel <= tolerance,
            Criterion::MaxAbsAtLeast => max_abs >= tolerance,
        }
    }
}

/// One verified statement. Non-finite residuals serialize as `null`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub check: String,
    pub max_abs: Option<f64>,
    pub max_rel: Option<f64>,
    pub witness: String,
    pub samples: usize,
    pub tolerance: f64,
    pub criterion: Criterion,
    pub pass: bool,
}

impl Check {
    pub fn from_report(
        suite: &str,
        check: String,
        tolerance: f64,
        criterion: Criterion,
        r: &ResidualReport,
    ) -> Self {
        let finite = |v: f64| if v.is_finite() { Some(v) } else { None };
        Self {
            suite: suite.to_string(),
            check,
            max_abs: finite(r.max_abs),
            max_rel: finite(r.max_rel),
            witness: r.witness.clone(),
            samples: r.samples,
            tolerance,
            criterion,
            pass: criterion.holds(r.max_abs, r.max_rel, tolerance),
        }
    }

    /// A check whose computation itself failed.
    pub fn errored(
        suite: &str,
        check: String,
        tolerance: f64,
        criterion: Criterion,
        err: impl std::fmt::Display,
    ) -> Self {
        Self {
            suite: suite.to_string(),
            check,
            max_abs: None,
            max_rel: None,
            witness: format!("error: {err}"),
            samples: 0,
            tolerance,
            criterion,
            pass: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub wall_time_ms: u64,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, checks: Vec<Check>, wall_time_ms: u64) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            pass: checks.iter().all(|c| c.pass),
            checks,
            wall_time_ms,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// The JSON report with the wall-time field zeroed, for reproducibility comparisons.
    pub fn to_json_without_timing(&self) -> Result<String, CliError> {
        let mut copy = self.clone();
        copy.wall_time_ms = 0;
        copy.to_json()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        for c in &self.checks {
            w.serialize(c)?;
        }
        w.flush()?;
        Ok(())
    }
}
