//! Scalar kernel: deformed logarithm and exponential, weighted means and the
//! helper functionals used by the inequality chains.
//!
//! All routines are pure and generic over [`Real`]. Near the removable
//! singularities (`t -> 0` for the deformed pair, `x -> 1` for [`eta`]) the
//! closed forms are replaced by truncated series.

use crate::error::{argument, domain, Error, Result};
use crate::function::FunctionSpec;
use crate::num::{lit, Real};

/// `|t|` at or below which [`deformed_log`] and [`deformed_exp`] switch to
/// their third-order series in `t`.
pub const SERIES_THRESHOLD: f64 = 1e-8;

fn check_positive<T: Real>(name: &str, x: T) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be a positive finite number, got {x}")))
    }
}

fn check_finite<T: Real>(name: &str, x: T) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(argument(format!("{name} must be finite, got {x}")))
    }
}

fn check_unit<T: Real>(name: &str, v: T) -> Result<()> {
    if v >= T::zero() && v <= T::one() {
        Ok(())
    } else {
        Err(domain(format!("{name} must lie in [0, 1], got {v}")))
    }
}

/// Deformed logarithm `ln_t(x) = (x^t - 1) / t`, continuously extended by
/// `log x` at `t = 0`.
pub fn deformed_log<T: Real>(t: T, x: T) -> Result<T> {
    check_finite("t", t)?;
    check_positive("x", x)?;
    let l = x.ln();
    if t.abs() <= lit(SERIES_THRESHOLD) {
        Ok(l + t * l * l / lit(2.0) + t * t * l * l * l / lit(6.0))
    } else {
        Ok((t * l).exp_m1() / t)
    }
}

/// `ln_t(x) - log(x)` without the cancellation of subtracting the two.
pub fn deformed_log_excess<T: Real>(t: T, x: T) -> Result<T> {
    check_finite("t", t)?;
    check_positive("x", x)?;
    let l = x.ln();
    let y = t * l;
    if y.abs() < lit(1e-3) {
        // L * (e^y - 1 - y) / y
        let series = y / lit(2.0)
            + y * y / lit(6.0)
            + y * y * y / lit(24.0)
            + y * y * y * y / lit(120.0)
            + y * y * y * y * y / lit(720.0);
        Ok(l * series)
    } else {
        Ok(y.exp_m1() / t - l)
    }
}

/// Deformed exponential `exp_t(x) = (1 + t x)^{1/t}`, the inverse of
/// [`deformed_log`]; `exp(x)` at `t = 0`.
pub fn deformed_exp<T: Real>(t: T, x: T) -> Result<T> {
    check_finite("t", t)?;
    check_finite("x", x)?;
    if t.abs() <= lit(SERIES_THRESHOLD) {
        let tx = t * x;
        return Ok((x - tx * x / lit(2.0) + tx * tx * x / lit(3.0)).exp());
    }
    let base = T::one() + t * x;
    if base <= T::zero() {
        return Err(domain(format!("1 + t*x must be positive (t={t}, x={x})")));
    }
    Ok(((t * x).ln_1p() / t).exp())
}

/// Weighted arithmetic and geometric means of two positive reals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedMeans<T> {
    /// `(1 - v) a + v b`
    pub arithmetic: T,
    /// `a^{1-v} b^v`
    pub geometric: T,
}

pub fn weighted_means<T: Real>(a: T, b: T, v: T) -> Result<WeightedMeans<T>> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_unit("v", v)?;
    let arithmetic = (T::one() - v) * a + v * b;
    let geometric = ((T::one() - v) * a.ln() + v * b.ln()).exp();
    Ok(WeightedMeans { arithmetic, geometric })
}

/// Exponential bounds on the arithmetic/geometric mean ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YoungRatioBounds<T> {
    pub lower: T,
    pub ratio: T,
    pub upper: T,
}

/// `exp(n(1 - r^{-1/n})) <= r <= exp(n(r^{1/n} - 1))` where `r` is the ratio of
/// the weighted arithmetic mean to the weighted geometric mean.
pub fn young_ratio_bounds<T: Real>(a: T, b: T, v: T, n: u64) -> Result<YoungRatioBounds<T>> {
    if n == 0 {
        return Err(argument("n must be a positive integer"));
    }
    let means = weighted_means(a, b, v)?;
    let ratio = means.arithmetic / means.geometric;
    let (upper_exp, lower_exp) = ratio_sequences(ratio, n)?;
    Ok(YoungRatioBounds { lower: lower_exp.exp(), ratio, upper: upper_exp.exp() })
}

/// The sequences `a_n(x) = n(x^{1/n} - 1)` and `b_n(x) = n(1 - x^{-1/n})`.
pub fn ratio_sequences<T: Real>(x: T, n: u64) -> Result<(T, T)> {
    check_positive("x", x)?;
    if n == 0 {
        return Err(argument("n must be a positive integer"));
    }
    let n = T::from_u64(n).ok_or_else(|| argument("n not representable"))?;
    let l = x.ln() / n;
    Ok((n * l.exp_m1(), -n * (-l).exp_m1()))
}

/// `theta(t, x) = min{(ln_t x - log x)^2, t^2}`; zero at `t = 0`.
pub fn theta<T: Real>(t: T, x: T) -> Result<T> {
    check_positive("x", x)?;
    if !(t >= T::zero() && t <= T::one()) {
        return Err(domain(format!("theta requires t in [0, 1], got {t}")));
    }
    if t == T::zero() {
        return Ok(T::zero());
    }
    let d = deformed_log_excess(t, x)?;
    Ok((d * d).min(t * t))
}

/// `eta(x, a) = (x^a log x - ln_a x) / (a ln_a x)`, extended by continuity to
/// `x = 1` (value 0) and `a = 0` (value `log(x) / 2`).
pub fn eta<T: Real>(x: T, a: T) -> Result<T> {
    check_positive("x", x)?;
    if !(a >= T::zero()) || !a.is_finite() {
        return Err(domain(format!("eta requires a >= 0, got {a}")));
    }
    let l = x.ln();
    let y = a * l;
    // eta = l * h(y), h(y) = (y e^y - (e^y - 1)) / (y (e^y - 1))
    let h = if y.abs() <= lit(1e-2) {
        // numerator and denominator divided by y^2:
        // sum_j (j+1)/(j+2)! y^j  over  sum_j 1/(j+1)! y^j
        let mut num = T::zero();
        let mut den = T::zero();
        let mut pow = T::one();
        let mut fact = T::one(); // (j+1)!
        for j in 0..8u32 {
            let jf: T = lit(f64::from(j));
            fact = fact * (jf + T::one());
            let fact_next = fact * (jf + lit(2.0));
            num = num + (jf + T::one()) / fact_next * pow;
            den = den + pow / fact;
            pow = pow * y;
        }
        num / den
    } else {
        let em1 = y.exp_m1();
        (y * y.exp() - em1) / (y * em1)
    };
    Ok(l * h)
}

/// `phi(t, x) = (x - 1) / ((1 - t) + t x) - log x`.
pub fn phi<T: Real>(t: T, x: T) -> Result<T> {
    check_positive("x", x)?;
    check_unit("t", t)?;
    Ok((x - T::one()) / ((T::one() - t) + t * x) - x.ln())
}

/// Logarithmic derivative at `t` of
/// `t -> g(a^{1-t} b^t) / (g(a)^{1-t} g(b)^t)`:
///
/// `G_t(g; a, b) = log(g(a)/g(b)) - c log(a/b) g'(c)/g(c)`, `c = a^{1-t} b^t`.
pub fn geom_log_derivative<T: Real>(g: &FunctionSpec<T>, a: T, b: T, t: T) -> Result<T> {
    check_positive("a", a)?;
    check_positive("b", b)?;
    check_unit("t", t)?;
    let c = weighted_means(a, b, t)?.geometric;
    let ga = positive_value(g, a)?;
    let gb = positive_value(g, b)?;
    let gc = positive_value(g, c)?;
    let dgc = g.deriv(c)?;
    Ok((ga / gb).ln() - c * (a / b).ln() * dgc / gc)
}

pub(crate) fn positive_value<T: Real>(f: &FunctionSpec<T>, x: T) -> Result<T> {
    let v = f.eval(x)?;
    if v > T::zero() {
        Ok(v)
    } else {
        Err(Error::FunctionContract { id: f.id().to_string(), reason: format!("value {v} at {x} is not positive") })
    }
}
