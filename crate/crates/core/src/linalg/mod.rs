//! Dense real symmetric matrices: eigendecomposition, functional calculus,
//! congruence sandwiches and Loewner-order comparison.

mod io;
mod jacobi;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::num::{lit, Real};

pub use io::MatrixFile;
pub use jacobi::{jacobi_eigendecomposition, EigenDecomposition, MAX_SWEEPS};

/// Relative floor below which a matrix is not treated as positive definite.
pub const PD_FLOOR: f64 = 1e-12;

/// Dense `n x n` real symmetric matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct SymmetricMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for SymmetricMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.n.max(1))).finish()
    }
}

fn symmetry_tol<T: Real>() -> T {
    lit::<T>(1e-12).max(T::epsilon() * lit(4.0))
}

impl<T: Real> SymmetricMatrix<T> {
    /// Builds a matrix from row-major entries. Entries must be finite and
    /// symmetric within `1e-12 (1 + |a_ij|)`; the stored matrix is the exact
    /// symmetrization.
    pub fn new(n: usize, data: Vec<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("matrix dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(n * n, data.len()));
        }
        if let Some(x) = data.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("matrix entry {x} is not finite")));
        }
        let tol = symmetry_tol::<T>();
        let mut data = data;
        for i in 0..n {
            for j in (i + 1)..n {
                let (a, b) = (data[i * n + j], data[j * n + i]);
                if (a - b).abs() > tol * (T::one() + a.abs()) {
                    return Err(Error::NotSymmetric { i, j, a_ij: a.to_f64_lossy(), a_ji: b.to_f64_lossy() });
                }
                let m = (a + b) / lit(2.0);
                data[i * n + j] = m;
                data[j * n + i] = m;
            }
        }
        Ok(SymmetricMatrix { n, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, r.len()));
        }
        Self::new(n, rows.iter().flatten().copied().collect())
    }

    /// Symmetric part `(M + M^T)/2` of an arbitrary square row-major matrix.
    pub fn symmetrize(n: usize, data: &[T]) -> Self {
        assert_eq!(data.len(), n * n);
        let half = lit::<T>(0.5);
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = half * (data[i * n + j] + data[j * n + i]);
            }
        }
        SymmetricMatrix { n, data: out }
    }

    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diag(&vec![T::one(); n])
    }

    pub fn diag(d: &[T]) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n);
        for (i, &x) in d.iter().enumerate() {
            m.data[i * n + i] = x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn cast<U: Real>(&self) -> SymmetricMatrix<U> {
        SymmetricMatrix { n: self.n, data: self.data.iter().map(|&x| lit::<U>(x.to_f64_lossy())).collect() }
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch(self.n, other.n))
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        self.same_dim(other)?;
        Ok(SymmetricMatrix { n: self.n, data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: T) -> Self {
        SymmetricMatrix { n: self.n, data: self.data.iter().map(|&x| c * x).collect() }
    }

    /// `a X + b Y`
    pub fn combine(a: T, x: &Self, b: T, y: &Self) -> Result<Self> {
        x.zip(y, |p, q| a * p + b * q)
    }

    /// `max_ij |a_ij|`
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Dense row-major product `self * other` (not symmetric in general).
    pub fn product(&self, other: &Self) -> Result<Vec<T>> {
        self.same_dim(other)?;
        Ok(dense_mul(&self.data, &other.data, self.n))
    }

    /// `self * x * self`, which is symmetric.
    pub fn congruence(&self, x: &Self) -> Result<Self> {
        self.same_dim(x)?;
        let n = self.n;
        let sx = dense_mul(&self.data, &x.data, n);
        Ok(Self::symmetrize(n, &dense_mul(&sx, &self.data, n)))
    }

    pub fn mul_vec(&self, h: &[T]) -> Result<Vec<T>> {
        if h.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, h.len()));
        }
        Ok(self.data.chunks(self.n).map(|r| r.iter().zip(h).map(|(&a, &b)| a * b).sum()).collect())
    }

    /// `<A h, h>`
    pub fn quadratic_form(&self, h: &[T]) -> Result<T> {
        Ok(self.mul_vec(h)?.iter().zip(h).map(|(&a, &b)| a * b).sum())
    }

    /// `B^T A B` for the `n x k` matrix whose columns are `basis`.
    pub fn compress(&self, basis: &[Vec<T>]) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.len() != self.n) {
            return Err(Error::DimensionMismatch(self.n, b.len()));
        }
        if basis.is_empty() {
            return Err(Error::Argument("compression basis is empty".into()));
        }
        let k = basis.len();
        let ab: Vec<Vec<T>> = basis.iter().map(|b| self.mul_vec(b)).collect::<Result<_>>()?;
        let mut out = vec![T::zero(); k * k];
        for i in 0..k {
            for j in 0..k {
                out[i * k + j] = basis[i].iter().zip(&ab[j]).map(|(&a, &b)| a * b).sum();
            }
        }
        Ok(Self::symmetrize(k, &out))
    }

    pub fn eigen(&self) -> Result<EigenDecomposition<T>> {
        jacobi_eigendecomposition(self)
    }

    /// Eigendecomposition of a matrix required to be positive definite:
    /// rejects `min lambda <= 1e-12 max lambda`.
    pub fn eigen_pd(&self) -> Result<EigenDecomposition<T>> {
        let e = self.eigen()?;
        let (lo, hi) = (e.min(), e.max());
        if !(hi > T::zero()) || lo <= lit::<T>(PD_FLOOR) * hi {
            return Err(Error::NotPositiveDefinite {
                min_eigenvalue: lo.to_f64_lossy(),
                max_eigenvalue: hi.to_f64_lossy(),
            });
        }
        Ok(e)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.eigen_pd().is_ok()
    }
}

pub(crate) fn dense_mul<T: Real>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == T::zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j] + aik * b[k * n + j];
            }
        }
    }
    out
}

/// `f(A) = Q f(Lambda) Q^T`. An eigenvalue for which `f` errors is reported
/// as [`Error::SpectrumOutsideDomain`].
pub fn apply_matrix_function<T: Real>(
    a: &SymmetricMatrix<T>,
    f: impl Fn(T) -> Result<T>,
) -> Result<SymmetricMatrix<T>> {
    a.eigen()?.map(f)
}

/// Precomputed congruence data for a pair `(A, B)` with `A` positive
/// definite: `A^{1/2}` and the eigendecomposition of `C = A^{-1/2} B A^{-1/2}`.
#[derive(Debug, Clone)]
pub struct Congruence<T> {
    sqrt_a: SymmetricMatrix<T>,
    inner: EigenDecomposition<T>,
}

impl<T: Real> Congruence<T> {
    pub fn new(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<Self> {
        a.same_dim(b)?;
        let ea = a.eigen_pd()?;
        let sqrt_a = ea.map(|x| Ok(x.sqrt()))?;
        let inv_sqrt_a = ea.map(|x| Ok(x.sqrt().recip()))?;
        let c = inv_sqrt_a.congruence(b)?;
        Ok(Congruence { sqrt_a, inner: c.eigen()? })
    }

    /// Spectrum of `A^{-1/2} B A^{-1/2}`, ascending.
    pub fn relative_spectrum(&self) -> &[T] {
        &self.inner.lambda
    }

    /// `A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}`
    pub fn apply(&self, f: impl Fn(T) -> Result<T>) -> Result<SymmetricMatrix<T>> {
        self.sqrt_a.congruence(&self.inner.map(f)?)
    }
}

/// `A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` for positive definite `A`.
pub fn congruence_sandwich<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    f: impl Fn(T) -> Result<T>,
) -> Result<SymmetricMatrix<T>> {
    Congruence::new(a, b)?.apply(f)
}

/// Extreme eigenvalues `(m, M)` of `A^{-1/2} B A^{-1/2}`, the tightest
/// constants with `m A <= B <= M A`.
pub fn relative_spectrum_bounds<T: Real>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<(T, T)> {
    b.eigen_pd()?;
    let c = Congruence::new(a, b)?;
    let s = c.relative_spectrum();
    Ok((s[0], s[s.len() - 1]))
}

/// Outcome of an `X <= Y` comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LoewnerVerdict<T> {
    pub holds: bool,
    /// Smallest eigenvalue of `Y - X`.
    pub min_slack_eigenvalue: T,
    pub tol: T,
    /// `max(1, ||X||_max, ||Y||_max)`
    pub scale: T,
}

impl<T: Real> LoewnerVerdict<T> {
    pub fn relative_slack(&self) -> T {
        self.min_slack_eigenvalue / self.scale
    }
}

/// Checks `X <= Y`: holds iff `min eig(Y - X) >= -tol * max(1, ||X||_max, ||Y||_max)`.
pub fn loewner_compare<T: Real>(x: &SymmetricMatrix<T>, y: &SymmetricMatrix<T>, tol: T) -> Result<LoewnerVerdict<T>> {
    let d = y.sub(x)?;
    let min = d.eigen()?.min();
    let scale = T::one().max(x.max_abs()).max(y.max_abs());
    Ok(LoewnerVerdict { holds: min >= -tol * scale, min_slack_eigenvalue: min, tol, scale })
}
