//! Greedy counterexample shrinking: drop dimensions by compressing onto
//! eigenvectors, then bisect parameters toward canonical values.

use super::{chain, evaluate, ChainDef, Status, Witness};
use crate::error::{argument, Result};
use crate::linalg::{MatrixFile, SymmetricMatrix};

/// Maximum number of evaluations spent on one witness.
pub const SHRINK_BUDGET: usize = 200;

const BISECTION_STEPS: usize = 8;

fn canonical(key: &str) -> Option<f64> {
    match key {
        "t" | "s" | "v" | "u" | "w" => Some(0.5),
        "x" | "a" | "b" => Some(1.0),
        _ => None,
    }
}

/// Failure class: `Some(true)` for an error, `Some(false)` for a failed
/// verdict, `None` when the witness does not fail.
fn failure_kind(def: &ChainDef, w: &Witness, tol: f64) -> Option<bool> {
    let r = evaluate(def, w, tol);
    (r.status == Status::Fail).then(|| r.error.is_some())
}

struct Shrinker<'a> {
    def: &'a ChainDef,
    tol: f64,
    kind: bool,
    spent: usize,
}

impl Shrinker<'_> {
    fn still_fails(&mut self, w: &Witness) -> bool {
        if self.spent >= SHRINK_BUDGET {
            return false;
        }
        self.spent += 1;
        failure_kind(self.def, w, self.tol) == Some(self.kind)
    }

    fn exhausted(&self) -> bool {
        self.spent >= SHRINK_BUDGET
    }
}

/// Compression of every matrix (and every vector of matching length) onto
/// all eigenvectors of the matrix sum except the `skip`-th.
fn drop_direction(w: &Witness, skip: usize) -> Result<Option<Witness>> {
    let Some(n) = w.dim() else { return Ok(None) };
    if n <= 1 || w.matrices.values().any(|m| m.n != n) {
        return Ok(None);
    }
    let mut sum = SymmetricMatrix::<f64>::zeros(n);
    for m in w.matrices.values() {
        sum = sum.add(&m.to_matrix()?)?;
    }
    let eig = sum.eigen()?;
    let basis: Vec<Vec<f64>> = (0..n).filter(|&k| k != skip).map(|k| eig.eigenvector(k)).collect();
    let mut out = w.clone();
    for (key, m) in &w.matrices {
        out.matrices.insert(key.clone(), MatrixFile::from_matrix(&m.to_matrix::<f64>()?.compress(&basis)?));
    }
    for (key, v) in &w.vectors {
        if v.len() == n {
            out.vectors.insert(key.clone(), basis.iter().map(|b| b.iter().zip(v).map(|(x, y)| x * y).sum()).collect());
        }
    }
    Ok(Some(out))
}

/// Returns a witness no larger than `w` that fails the same way as `w`
/// (verdict failure or evaluation error). Errors if `w` does not fail.
pub fn shrink_witness(chain_id: &str, w: &Witness, tol: f64) -> Result<Witness> {
    let def = chain(chain_id).ok_or_else(|| argument(format!("unknown chain `{chain_id}`")))?;
    let kind = failure_kind(def, w, tol).ok_or_else(|| argument("witness does not fail"))?;
    let mut s = Shrinker { def, tol, kind, spent: 1 };
    let mut best = w.clone();

    'dims: while !s.exhausted() {
        let n = best.dim().unwrap_or(0);
        for skip in 0..n {
            match drop_direction(&best, skip) {
                Ok(Some(c)) if s.still_fails(&c) => {
                    best = c;
                    continue 'dims;
                }
                Ok(None) => break 'dims,
                _ => {}
            }
        }
        break;
    }

    let keys: Vec<String> = best.params.keys().cloned().collect();
    for key in keys {
        if s.exhausted() {
            break;
        }
        if key == "n" {
            let mut n = best.params["n"];
            while n > 1.0 && !s.exhausted() {
                let c = best.clone().param("n", (n / 2.0).floor().max(1.0));
                if !s.still_fails(&c) {
                    break;
                }
                best = c;
                n = best.params["n"];
            }
            continue;
        }
        let Some(target) = canonical(&key) else { continue };
        let current = best.params[&key];
        if current == target {
            continue;
        }
        let c = best.clone().param(&key, target);
        if s.still_fails(&c) {
            best = c;
            continue;
        }
        // failing end stays at `far`, passing end at `near`
        let (mut far, mut near) = (current, target);
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (far + near);
            let c = best.clone().param(&key, mid);
            if s.still_fails(&c) {
                far = mid;
                best = c;
            } else {
                near = mid;
            }
            if s.exhausted() {
                break;
            }
        }
    }
    Ok(best)
}
