use serde::Serialize;

use super::SymmetricMatrix;
use crate::error::{Error, Result};
use crate::num::{lit, Real};

pub const MAX_SWEEPS: usize = 60;

/// `A = Q diag(lambda) Q^T` with orthogonal `Q` (eigenvectors in columns,
/// row-major storage) and ascending `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenDecomposition<T> {
    pub n: usize,
    pub q: Vec<T>,
    pub lambda: Vec<T>,
}

impl<T: Real> EigenDecomposition<T> {
    pub fn min(&self) -> T {
        self.lambda[0]
    }

    pub fn max(&self) -> T {
        self.lambda[self.n - 1]
    }

    pub fn eigenvector(&self, k: usize) -> Vec<T> {
        (0..self.n).map(|i| self.q[i * self.n + k]).collect()
    }

    /// `Q diag(f(lambda)) Q^T`
    pub fn map(&self, f: impl Fn(T) -> Result<T>) -> Result<SymmetricMatrix<T>> {
        let mu = self
            .lambda
            .iter()
            .map(|&l| f(l).map_err(|_| Error::SpectrumOutsideDomain { eigenvalue: l.to_f64_lossy() }))
            .collect::<Result<Vec<T>>>()?;
        if let Some(&l) = self.lambda.iter().zip(&mu).find(|(_, m)| !m.is_finite()).map(|(l, _)| l) {
            return Err(Error::SpectrumOutsideDomain { eigenvalue: l.to_f64_lossy() });
        }
        let n = self.n;
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v: T = (0..n).map(|k| self.q[i * n + k] * mu[k] * self.q[j * n + k]).sum();
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        Ok(SymmetricMatrix { n, data: out })
    }

    pub fn reconstruct(&self) -> SymmetricMatrix<T> {
        self.map(Ok).expect("finite spectrum")
    }
}

fn off_diagonal_norm<T: Real>(a: &[T], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi eigendecomposition. Converged when the off-diagonal
/// Frobenius norm is at most `max(1e-14, 16 eps) ||A||_F`.
pub fn jacobi_eigendecomposition<T: Real>(a: &SymmetricMatrix<T>) -> Result<EigenDecomposition<T>> {
    let n = a.n;
    let mut m = a.data.clone();
    let mut v = SymmetricMatrix::<T>::identity(n).data;
    let threshold = lit::<T>(1e-14).max(T::epsilon() * lit(16.0)) * a.frobenius();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&m, n) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[q * n + q] - m[p * n + p]) / (apq + apq);
                let t = if theta.abs() > lit(1e150) {
                    (theta + theta).recip()
                } else {
                    let r = theta.abs() + (theta * theta + T::one()).sqrt();
                    if theta < T::zero() {
                        -r.recip()
                    } else {
                        r.recip()
                    }
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m[k * n + p], m[k * n + q]);
                    m[k * n + p] = c * mkp - s * mkq;
                    m[k * n + q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[p * n + k], m[q * n + k]);
                    m[p * n + k] = c * mpk - s * mqk;
                    m[q * n + k] = s * mpk + c * mqk;
                }
                m[p * n + q] = T::zero();
                m[q * n + p] = T::zero();
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&m, n);
        if off > threshold {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS, off_norm: off.to_f64_lossy() });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].partial_cmp(&m[j * n + j]).unwrap_or(std::cmp::Ordering::Equal));
    let lambda = order.iter().map(|&k| m[k * n + k]).collect();
    let mut q = vec![T::zero(); n * n];
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            q[i * n + col] = v[i * n + k];
        }
    }
    Ok(EigenDecomposition { n, q, lambda })
}
