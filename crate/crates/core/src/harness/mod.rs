//! Randomized instance generation, fuzzing of registered chains,
//! counterexample shrinking and report emission.

mod chains;
pub mod generate;
mod report;
mod shrink;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{ChainVerdict, DEFAULT_TOL};
use crate::entropy::OperatorChainVerdict;
use crate::error::{argument, Error, Result};
use crate::function::{resolve, FunctionRef, FunctionSpec};
use crate::linalg::{MatrixFile, SymmetricMatrix};

pub use chains::{chain, chains, ChainDef};
pub use generate::{gen_constrained_pair, gen_pd_matrix};
pub use report::{read_report, report_json, slack_csv, write_report, ChainSummary, Report, ReportOptions};
pub use shrink::{shrink_witness, SHRINK_BUDGET};

/// Parameters shared by every generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub trials: usize,
    /// Inclusive matrix dimension range.
    pub dim_range: (usize, usize),
    /// Range for matrix eigenvalues (log-uniform).
    pub scalar_range: (f64, f64),
    /// Target `(m, M)` for constrained pairs `mA <= B <= MA`.
    pub regime: Option<(f64, f64)>,
    pub tol: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            seed: 0,
            trials: 1000,
            dim_range: (2, 8),
            scalar_range: (0.1, 10.0),
            tol: DEFAULT_TOL,
            regime: None,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(argument("trials must be at least 1"));
        }
        let (d0, d1) = self.dim_range;
        if d0 == 0 || d1 < d0 {
            return Err(argument(format!("invalid dimension range [{d0}, {d1}]")));
        }
        let (lo, hi) = self.scalar_range;
        if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
            return Err(argument(format!("invalid scalar range [{lo}, {hi}]")));
        }
        if let Some((m, big_m)) = self.regime {
            if !(m > 0.0 && big_m >= m && big_m.is_finite()) {
                return Err(argument(format!("invalid regime [{m}, {big_m}]")));
            }
        }
        if !self.tol.is_finite() {
            return Err(argument("tolerance must be finite"));
        }
        Ok(())
    }
}

/// A concrete instance of a chain: scalar parameters, vectors, matrices and
/// function references.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, MatrixFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, FunctionRef>,
}

impl Witness {
    pub fn param(mut self, key: &str, v: f64) -> Self {
        self.params.insert(key.into(), v);
        self
    }

    pub fn vector(mut self, key: &str, v: Vec<f64>) -> Self {
        self.vectors.insert(key.into(), v);
        self
    }

    pub fn matrix(mut self, key: &str, m: &SymmetricMatrix<f64>) -> Self {
        self.matrices.insert(key.into(), MatrixFile::from_matrix(m));
        self
    }

    pub fn function(mut self, key: &str, f: &FunctionSpec<f64>) -> Self {
        self.functions.insert(key.into(), f.reference().clone());
        self
    }

    pub fn get(&self, key: &str) -> Result<f64> {
        self.params.get(key).copied().ok_or_else(|| argument(format!("missing parameter `{key}`")))
    }

    pub fn get_vector(&self, key: &str) -> Result<&[f64]> {
        self.vectors.get(key).map(|v| v.as_slice()).ok_or_else(|| argument(format!("missing vector `{key}`")))
    }

    pub fn get_matrix(&self, key: &str) -> Result<SymmetricMatrix<f64>> {
        self.matrices.get(key).ok_or_else(|| argument(format!("missing matrix `{key}`")))?.to_matrix()
    }

    pub fn get_function(&self, key: &str) -> Result<FunctionSpec<f64>> {
        resolve(self.functions.get(key).ok_or_else(|| argument(format!("missing function `{key}`")))?)
    }

    /// Dimension shared by the witness matrices, if any.
    pub fn dim(&self) -> Option<usize> {
        self.matrices.values().map(|m| m.n).max()
    }
}

/// Result of evaluating one witness.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub pass: bool,
    /// Smallest link slack divided by its scale.
    pub min_slack: f64,
    pub detail: Value,
}

impl From<ChainVerdict<f64>> for Outcome {
    fn from(v: ChainVerdict<f64>) -> Self {
        Outcome {
            pass: v.pass,
            min_slack: v.min_relative_slack(),
            detail: serde_json::to_value(&v).unwrap_or(Value::Null),
        }
    }
}

impl From<OperatorChainVerdict<f64>> for Outcome {
    fn from(v: OperatorChainVerdict<f64>) -> Self {
        Outcome {
            pass: v.pass,
            min_slack: v.min_relative_slack(),
            detail: serde_json::to_value(&v).unwrap_or(Value::Null),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

/// Classification of a single evaluation: any error other than
/// [`Error::NotApplicable`] is a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialResult {
    pub status: Status,
    pub min_slack: Option<f64>,
    pub detail: Value,
    pub error: Option<String>,
}

pub fn evaluate(def: &ChainDef, w: &Witness, tol: f64) -> TrialResult {
    match (def.evaluate)(w, tol) {
        Ok(o) => TrialResult {
            status: if o.pass { Status::Pass } else { Status::Fail },
            min_slack: Some(o.min_slack),
            detail: o.detail,
            error: None,
        },
        Err(Error::NotApplicable(msg)) => {
            TrialResult { status: Status::NotApplicable, min_slack: None, detail: Value::Null, error: Some(msg) }
        }
        Err(e) => {
            TrialResult { status: Status::Fail, min_slack: None, detail: Value::Null, error: Some(e.to_string()) }
        }
    }
}

/// A failing trial with its witness and, when shrinking succeeded, a
/// smaller failing witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub trial: usize,
    pub witness: Witness,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_slack: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shrunk: Option<Witness>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

/// Aggregate of one chain's fuzz run.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzReport {
    pub chain_id: String,
    pub seed: u64,
    pub trials: usize,
    pub passes: usize,
    pub not_applicable: usize,
    pub failures: Vec<FailureRecord>,
    /// Smallest normalized slack over evaluated trials.
    pub min_slack: Option<f64>,
    pub elapsed_s: f64,
    /// `(trial, min_link_slack)` for every evaluated trial.
    pub slacks: Vec<(usize, f64)>,
}

/// Failures beyond this count are recorded but not shrunk.
pub const MAX_SHRUNK_FAILURES: usize = 3;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(FNV_OFFSET, |h, b| (h ^ b as u64).wrapping_mul(FNV_PRIME))
}

/// Random stream for `(seed, chain, trial)`: ChaCha8 keyed by the seed and
/// chain id, with the trial index selecting the stream.
pub fn trial_rng(seed: u64, chain_id: &str, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(chain_id));
    rng.set_stream(trial as u64);
    rng
}

/// Generates one trial's witness.
pub fn trial_witness(def: &ChainDef, cfg: &GeneratorConfig, trial: usize) -> Result<Witness> {
    (def.generate)(&mut trial_rng(cfg.seed, def.id, trial), cfg)
}

/// Runs `cfg.trials` seeded trials of a registered chain in parallel and
/// aggregates them in trial order.
pub fn fuzz_chain(chain_id: &str, cfg: &GeneratorConfig) -> Result<FuzzReport> {
    cfg.validate()?;
    let def = chain(chain_id).ok_or_else(|| argument(format!("unknown chain `{chain_id}`")))?;
    let start = Instant::now();
    let results: Vec<(Witness, TrialResult)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| match trial_witness(def, cfg, trial) {
            Ok(w) => {
                let r = evaluate(def, &w, cfg.tol);
                (w, r)
            }
            Err(e) => (
                Witness::default(),
                TrialResult {
                    status: Status::Fail,
                    min_slack: None,
                    detail: Value::Null,
                    error: Some(format!("generator: {e}")),
                },
            ),
        })
        .collect();

    let mut report = FuzzReport {
        chain_id: chain_id.to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        passes: 0,
        not_applicable: 0,
        failures: Vec::new(),
        min_slack: None,
        elapsed_s: 0.0,
        slacks: Vec::new(),
    };
    for (trial, (w, r)) in results.into_iter().enumerate() {
        if let Some(s) = r.min_slack {
            report.slacks.push((trial, s));
            report.min_slack = Some(match report.min_slack {
                Some(m) if !(s < m) && !s.is_nan() => m,
                _ => s,
            });
        }
        match r.status {
            Status::Pass => report.passes += 1,
            Status::NotApplicable => report.not_applicable += 1,
            Status::Fail => {
                let shrunk = if report.failures.len() < MAX_SHRUNK_FAILURES {
                    shrink_witness(chain_id, &w, cfg.tol).ok().filter(|s| s != &w)
                } else {
                    None
                };
                report.failures.push(FailureRecord {
                    trial,
                    witness: w,
                    min_slack: r.min_slack,
                    error: r.error,
                    shrunk,
                    detail: r.detail,
                });
            }
        }
    }
    report.elapsed_s = start.elapsed().as_secs_f64();
    Ok(report)
}
