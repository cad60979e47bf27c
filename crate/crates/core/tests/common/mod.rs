#![allow(dead_code)]

use oel::harness::generate::{log_uniform, random_orthogonal, uniform};
use oel::scalar::{deformed_log, eta, theta};
use oel::{Matrix, OperatorVerdict};
use rand::Rng;

/// Commuting pair `A = Q diag(a) Q^T`, `B = Q diag(a x) Q^T`.
pub struct Commuting {
    pub q: Vec<Vec<f64>>,
    pub a: Vec<f64>,
    pub x: Vec<f64>,
}

impl Commuting {
    pub fn new<R: Rng>(rng: &mut R, x: Vec<f64>) -> Self {
        let n = x.len();
        let a = (0..n).map(|_| log_uniform(rng, 0.1, 10.0)).collect();
        Commuting { q: random_orthogonal(rng, n), a, x }
    }

    pub fn b(&self) -> Vec<f64> {
        self.a.iter().zip(&self.x).map(|(a, x)| a * x).collect()
    }

    pub fn matrix(&self, diag: &[f64]) -> Matrix {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (col, &l) in self.q.iter().zip(diag) {
            for i in 0..n {
                for j in 0..n {
                    data[i * n + j] += l * col[i] * col[j];
                }
            }
        }
        Matrix::symmetrize(n, &data)
    }

    pub fn pair(&self) -> (Matrix, Matrix) {
        (self.matrix(&self.a), self.matrix(&self.b()))
    }

    pub fn bounds(&self) -> (f64, f64) {
        let m = self.x.iter().cloned().fold(f64::INFINITY, f64::min);
        let mm = self.x.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        (m, mm)
    }

    /// `a_i f(x_i)` for every eigen-index.
    pub fn sandwich(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.a.iter().zip(&self.x).map(|(&a, &x)| a * f(x)).collect()
    }
}

/// Spectrum of size `n` in `[m, mm]` with both ends attained.
pub fn pinned<R: Rng>(rng: &mut R, n: usize, m: f64, mm: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (0..n).map(|_| uniform(rng, m, mm)).collect();
    s[0] = m;
    s[n - 1] = mm;
    s
}

fn ln_t(t: f64, x: f64) -> f64 {
    deformed_log(t, x).unwrap()
}

/// Eigenvalue-wise link values of each chain: the main chain first, then companions.
pub type ScalarChains = Vec<Vec<Vec<f64>>>;

pub fn zou(c: &Commuting, t: f64) -> ScalarChains {
    let lower: Vec<f64> = c.a.iter().zip(c.b()).map(|(a, b)| a - a * a / b).collect();
    let diff: Vec<f64> = c.a.iter().zip(c.b()).map(|(a, b)| b - a).collect();
    vec![vec![lower, c.sandwich(|x| ln_t(-t, x)), c.sandwich(f64::ln), c.sandwich(|x| ln_t(t, x)), diff]]
}

pub fn refined_st(c: &Commuting, t: f64) -> ScalarChains {
    let (m, mm) = c.bounds();
    let th = if mm < 1.0 - 1e-12 {
        theta(t, mm).unwrap()
    } else if m > 1.0 + 1e-12 {
        theta(t, m).unwrap()
    } else {
        0.0
    };
    vec![vec![c.sandwich(|x| x.ln() + th / t), c.sandwich(|x| ln_t(t, x))]]
}

pub fn tsallis_relation(c: &Commuting, s: f64, t: f64) -> ScalarChains {
    let (m, mm) = c.bounds();
    let (m, mm) = (m.max(1.0), mm.max(1.0));
    let (lo_x, hi_x) = if t >= s { (m, mm) } else { (mm, m) };
    let lo = (eta(lo_x, s).unwrap() * (t - s)).exp();
    let hi = (eta(hi_x, t).unwrap() * (t - s)).exp();
    let n = c.a.len();
    vec![vec![
        vec![0.0; n],
        c.sandwich(|x| lo * ln_t(s, x)),
        c.sandwich(|x| ln_t(t, x)),
        c.sandwich(|x| hi * ln_t(s, x)),
    ]]
}

pub fn roe_bounds(c: &Commuting) -> ScalarChains {
    let (m, mm) = c.bounds();
    let e = std::f64::consts::E;
    let n = c.a.len();
    if mm <= 1.0 / e + 1e-12 {
        let lo = -((e * m - 1.0) / (e * m * m.ln())).exp();
        let hi = -(1.0 - e * mm).exp();
        vec![vec![c.sandwich(|_| lo), c.sandwich(f64::ln), c.sandwich(|_| hi), vec![0.0; n]]]
    } else {
        let lo = if m > 1.0 { ((m - e) / (m * m.ln())).exp() } else { 0.0 };
        let hi = ((mm - e) / e).exp();
        vec![vec![vec![0.0; n], c.sandwich(|_| lo), c.sandwich(f64::ln), c.sandwich(|_| hi)]]
    }
}

pub fn troe_linear(c: &Commuting, t: f64) -> ScalarChains {
    let (m, mm) = c.bounds();
    let m = m.max(1.0);
    let (lm, lmm) = (ln_t(t, m), ln_t(t, mm));
    let alpha = (lmm - lm) / (mm - m);
    let beta = (mm * lm - m * lmm) / (mm - m);
    let chord = c.sandwich(|x| alpha * x + beta);
    let tt = c.sandwich(|x| ln_t(t, x));
    let concave = t <= 1.0;
    let mut out = vec![if concave { vec![chord, tt.clone()] } else { vec![tt.clone(), chord] }];
    if (m - 1.0).abs() <= 1e-9 {
        let k = lmm / (mm - 1.0);
        let d = c.sandwich(|x| x - 1.0);
        let kd = c.sandwich(|x| k * (x - 1.0));
        out.push(if concave { vec![kd, tt, d] } else { vec![d, tt, kd] });
    }
    out
}

pub fn ordering(c: &Commuting, p: f64) -> ScalarChains {
    let s = c.sandwich(f64::ln);
    let tp = c.sandwich(|x| ln_t(p, x));
    let sp = c.sandwich(|x| x.powf(p) * x.ln());
    vec![if p > 0.0 { vec![s, tp, sp] } else { vec![sp, tp, s] }]
}

/// Result of comparing an operator verdict against its scalar oracle.
#[derive(Debug, Default)]
pub struct OracleCheck {
    /// Largest link discrepancy relative to `1 + max |value|`.
    pub link_error: f64,
    /// Largest discrepancy of minimum slack eigenvalues relative to the link scale.
    pub slack_error: f64,
    /// Verdict mismatches at the given tolerance outside the `1e-10` band.
    pub verdict_mismatch: bool,
    /// Conjunction of the scalar chains at the given tolerance.
    pub oracle_pass: bool,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn compare(c: &Commuting, verdict: &OperatorVerdict, oracle: &ScalarChains, tol: f64) -> OracleCheck {
    let mut out = OracleCheck::default();
    let ops: Vec<&OperatorVerdict> = std::iter::once(verdict).chain(verdict.companions.iter()).collect();
    assert_eq!(ops.len(), oracle.len(), "companion count");
    let mut all_pass = true;
    let mut ambiguous = false;
    for (op, chain) in ops.iter().zip(oracle) {
        assert_eq!(op.links.len(), chain.len(), "{}: link count", op.chain_id);
        for (link, values) in op.links.iter().zip(chain) {
            let expected = c.matrix(values);
            let err = link.sub(&expected).unwrap().max_abs() / (1.0 + max_abs(values));
            out.link_error = out.link_error.max(err);
        }
        for (k, v) in op.verdicts.iter().enumerate() {
            let (x, y) = (c.matrix(&chain[k]), c.matrix(&chain[k + 1]));
            let scale = 1f64.max(x.max_abs()).max(y.max_abs());
            let slack = chain[k + 1].iter().zip(&chain[k]).map(|(y, x)| y - x).fold(f64::INFINITY, f64::min);
            out.slack_error = out.slack_error.max((v.min_slack_eigenvalue - slack).abs() / scale);
            let margin = slack + tol * scale;
            if margin.abs() <= 1e-10 * scale {
                ambiguous = true;
            }
            all_pass &= margin >= 0.0;
        }
    }
    out.verdict_mismatch = !ambiguous && verdict.clone().with_tol(tol).pass != all_pass;
    out.oracle_pass = all_pass;
    out
}
