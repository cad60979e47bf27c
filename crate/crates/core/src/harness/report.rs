//! JSON report and per-trial slack CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FailureRecord, FuzzReport};
use crate::error::{Error, Result};

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainSummary {
    pub id: String,
    pub trials: usize,
    pub failures: Vec<FailureRecord>,
    pub not_applicable: usize,
    pub min_slack: Option<f64>,
    pub elapsed_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub chains: Vec<ChainSummary>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Record wall-clock time; off by default so reports are reproducible.
    pub timing: bool,
    pub pretty: bool,
}

impl Report {
    pub fn from_fuzz(seed: u64, reports: &[FuzzReport], opts: ReportOptions) -> Self {
        Report {
            version: REPORT_VERSION,
            seed,
            chains: reports
                .iter()
                .map(|r| ChainSummary {
                    id: r.chain_id.clone(),
                    trials: r.trials,
                    failures: r.failures.clone(),
                    not_applicable: r.not_applicable,
                    min_slack: r.min_slack.filter(|s| s.is_finite()),
                    elapsed_s: if opts.timing { r.elapsed_s } else { 0.0 },
                })
                .collect(),
        }
    }
}

pub fn report_json(seed: u64, reports: &[FuzzReport], opts: ReportOptions) -> String {
    let report = Report::from_fuzz(seed, reports, opts);
    let text = if opts.pretty { serde_json::to_string_pretty(&report) } else { serde_json::to_string(&report) };
    text.expect("report serializes")
}

/// `chain_id,trial,min_link_slack` rows for every evaluated trial.
pub fn slack_csv(reports: &[FuzzReport]) -> String {
    let mut out = String::from("chain_id,trial,min_link_slack\n");
    for r in reports {
        for (trial, s) in &r.slacks {
            let _ = writeln!(out, "{},{},{:e}", r.chain_id, trial, s);
        }
    }
    out
}

/// Writes the JSON report to `path` and the slack CSV next to it
/// (same stem, `.csv` extension).
pub fn write_report(seed: u64, reports: &[FuzzReport], path: &Path, opts: ReportOptions) -> Result<()> {
    let io = |e: std::io::Error| Error::Argument(format!("cannot write report: {e}"));
    let mut json = report_json(seed, reports, opts);
    json.push('\n');
    fs::write(path, json).map_err(io)?;
    fs::write(path.with_extension("csv"), slack_csv(reports)).map_err(io)?;
    Ok(())
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| Error::Argument(format!("cannot read report: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Argument(format!("malformed report: {e}")))
}
