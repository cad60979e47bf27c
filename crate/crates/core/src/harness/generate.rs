//! Seeded instance generators.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::GeneratorConfig;
use crate::error::{argument, Result};
use crate::linalg::SymmetricMatrix;

pub fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Uniform on `(0, 1]`.
pub fn unit_open_closed<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

pub fn log_uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp().clamp(lo, hi)
}

/// Uniform point on the probability simplex (normalized exponentials).
pub fn simplex_weights<R: Rng + ?Sized>(rng: &mut R, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| -unit_open_closed(rng).ln() + 1e-300).collect();
    let total: f64 = e.iter().sum();
    e.iter().map(|x| x / total).collect()
}

pub fn gaussian_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| StandardNormal.sample(rng)).collect()
}

/// Orthonormal columns from Gram-Schmidt (applied twice) on Gaussian vectors.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let mut cols: Vec<Vec<f64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = gaussian_vector(rng, n);
        for _ in 0..2 {
            for q in &cols {
                let d: f64 = q.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= d * qi;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            cols.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    cols
}

/// `Q diag(spectrum) Q^T` for a random orthogonal `Q`.
pub fn with_spectrum<R: Rng + ?Sized>(rng: &mut R, spectrum: &[f64]) -> SymmetricMatrix<f64> {
    let n = spectrum.len();
    let q = random_orthogonal(rng, n);
    let mut data = vec![0.0; n * n];
    for (col, &l) in q.iter().zip(spectrum) {
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] += l * col[i] * col[j];
            }
        }
    }
    SymmetricMatrix::symmetrize(n, &data)
}

pub fn draw_dim<R: Rng + ?Sized>(rng: &mut R, cfg: &GeneratorConfig) -> usize {
    rng.random_range(cfg.dim_range.0..=cfg.dim_range.1)
}

/// Positive definite matrix with eigenvalues log-uniform in `cfg.scalar_range`.
pub fn gen_pd_matrix<R: Rng + ?Sized>(rng: &mut R, cfg: &GeneratorConfig) -> SymmetricMatrix<f64> {
    let n = draw_dim(rng, cfg);
    gen_pd_of_dim(rng, cfg, n)
}

pub fn gen_pd_of_dim<R: Rng + ?Sized>(rng: &mut R, cfg: &GeneratorConfig, n: usize) -> SymmetricMatrix<f64> {
    let (lo, hi) = cfg.scalar_range;
    let spectrum: Vec<f64> = (0..n).map(|_| log_uniform(rng, lo, hi)).collect();
    with_spectrum(rng, &spectrum)
}

/// Spectrum of length `n` inside `[m, big_m]` with both endpoints attained
/// (only `m` when `n = 1`).
pub fn pinned_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize, m: f64, big_m: f64) -> Vec<f64> {
    let mut s: Vec<f64> = (0..n).map(|_| uniform(rng, m, big_m)).collect();
    s[0] = m;
    if n > 1 {
        s[n - 1] = big_m;
    }
    s
}

/// `(A, B)` with `B = A^{1/2} C A^{1/2}` and the spectrum of `C` inside
/// `cfg.regime` with its endpoints attained.
pub fn gen_constrained_pair<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &GeneratorConfig,
) -> Result<(SymmetricMatrix<f64>, SymmetricMatrix<f64>)> {
    let (m, big_m) = cfg.regime.ok_or_else(|| argument("constrained pair needs a regime"))?;
    let n = draw_dim(rng, cfg);
    pair_of_dim(rng, cfg, n, m, big_m)
}

pub fn pair_of_dim<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &GeneratorConfig,
    n: usize,
    m: f64,
    big_m: f64,
) -> Result<(SymmetricMatrix<f64>, SymmetricMatrix<f64>)> {
    if !(m > 0.0 && big_m >= m && big_m.is_finite()) {
        return Err(argument(format!("invalid regime targets m={m}, M={big_m}")));
    }
    let a = gen_pd_of_dim(rng, cfg, n);
    let spectrum = pinned_spectrum(rng, n, m, big_m);
    let c = with_spectrum(rng, &spectrum);
    let root = a.eigen_pd()?.map(|x| Ok(x.sqrt()))?;
    let b = root.congruence(&c)?;
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{loewner_compare, relative_spectrum_bounds};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one_is_positive_scalar() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = GeneratorConfig { dim_range: (1, 1), ..GeneratorConfig::default() };
        let a = gen_pd_matrix(&mut rng, &cfg);
        assert_eq!(a.n(), 1);
        assert!(a.get(0, 0) > 0.0);
    }

    #[test]
    fn fixed_seed_is_reproducible() {
        let cfg = GeneratorConfig::default();
        let a = gen_pd_matrix(&mut ChaCha8Rng::seed_from_u64(9), &cfg);
        let b = gen_pd_matrix(&mut ChaCha8Rng::seed_from_u64(9), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn draws_are_strictly_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = GeneratorConfig::default();
        for _ in 0..50 {
            let a = gen_pd_matrix(&mut rng, &cfg);
            let v = loewner_compare(&SymmetricMatrix::zeros(a.n()), &a, 0.0).unwrap();
            assert!(v.holds && v.min_slack_eigenvalue > 0.0);
        }
    }

    #[test]
    fn constrained_pair_recovers_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let cfg = GeneratorConfig { dim_range: (3, 3), regime: Some((2.0, 5.0)), ..GeneratorConfig::default() };
        let (a, b) = gen_constrained_pair(&mut rng, &cfg).unwrap();
        let (m, big_m) = relative_spectrum_bounds(&a, &b).unwrap();
        assert!((m - 2.0).abs() < 1e-9 && (big_m - 5.0).abs() < 1e-9);

        let cfg = GeneratorConfig { regime: Some((1.0, 1.0)), ..GeneratorConfig::default() };
        let (a, b) = gen_constrained_pair(&mut rng, &cfg).unwrap();
        assert!(a.sub(&b).unwrap().max_abs() < 1e-12 * a.max_abs().max(1.0));

        let cfg = GeneratorConfig { regime: Some((0.05, (-1f64).exp())), ..GeneratorConfig::default() };
        let (a, b) = gen_constrained_pair(&mut rng, &cfg).unwrap();
        assert!(crate::entropy::check_roe_bounds(&a, &b, 1e-9).is_ok());

        let cfg = GeneratorConfig { regime: Some((3.0, 2.0)), ..GeneratorConfig::default() };
        assert!(gen_constrained_pair(&mut rng, &cfg).is_err());
    }

    #[test]
    fn orthogonal_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let q = random_orthogonal(&mut rng, 6);
        for i in 0..6 {
            for j in 0..6 {
                let d: f64 = q[i].iter().zip(&q[j]).map(|(a, b)| a * b).sum();
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn simplex_weights_sum_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for k in 1..10 {
            let w = simplex_weights(&mut rng, k);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
            assert!(w.iter().all(|&x| x > 0.0));
        }
    }
}
