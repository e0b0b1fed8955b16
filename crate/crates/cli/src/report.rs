use std::fmt::Write as _;

use edss::metrics::{BipartitionReport, DiscordResult, StepCertificate};
use edss::states::StateDecomposition;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Machine-readable output of every command. Field order is the
/// serialization order; optional sections are omitted when absent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub artifact_version: String,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub config: Option<RunConfig>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub certificates: Vec<StepCertificate>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<BipartitionReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub discord: Vec<DiscordResult>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub landscape: Vec<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<DecompositionOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub golden: Vec<GoldenRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub trend: Vec<TrendRow>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timing: Option<Timing>,
}

impl ReportDocument {
    pub fn new(command: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            artifact_version: ARTIFACT_VERSION.to_owned(),
            command: command.to_owned(),
            config: None,
            certificates: Vec::new(),
            report: None,
            discord: Vec::new(),
            landscape: Vec::new(),
            decomposition: None,
            golden: Vec::new(),
            trend: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            timing: None,
        }
    }

    /// `true` unless a golden row or a check failed.
    pub fn passed(&self) -> bool {
        self.golden.iter().all(|r| r.status != GoldenStatus::Fail) && self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GoldenStatus {
    Pass,
    Fail,
    /// Mismatch that is explained in the row's note rather than failed.
    Documented,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub id: String,
    pub expected: Vec<f64>,
    pub actual: Vec<f64>,
    pub tolerance: f64,
    pub status: GoldenStatus,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub n: usize,
    pub geometric_average: f64,
    pub total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompositionOutcome {
    /// Probability of the carrier outcomes the state was post-selected on.
    pub probability: f64,
    pub fits: bool,
    pub decomposition: StateDecomposition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_seconds: f64,
}

/// `x` with 12 significant digits in scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn trend_csv(rows: &[TrendRow]) -> String {
    let mut out = String::from("n,geometric_average,total\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{}", r.n, sig12(r.geometric_average), sig12(r.total));
    }
    out
}

/// One row per bipartition; eigenvalues separated by `;`.
pub fn report_csv(report: &BipartitionReport) -> String {
    let mut out = String::from("bipartition,negativity,negative_eigenvalues\n");
    for e in &report.entries {
        let values: Vec<String> = e.negative_eigenvalues.iter().map(|&v| sig12(v)).collect();
        let _ = writeln!(out, "{},{},{}", e.name, sig12(e.negativity), values.join(";"));
    }
    let _ = writeln!(out, "geometric_average,{},", sig12(report.geometric_average));
    let _ = writeln!(out, "total,{},", sig12(report.total));
    out
}
