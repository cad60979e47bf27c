//! Scalar inequality chains.
//!
//! Every check evaluates the members of a chain `v_0 <= v_1 <= ... <= v_k`
//! left to right and records the adjacent slacks `v_{i+1} - v_i`. A chain
//! passes when every slack is at least `-tol * max(1, max |v_i|)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::function::FunctionSpec;
use crate::num::{lit, Real};
use crate::scalar::{self, positive_value};

/// Relative slack tolerance used when a check is not given one explicitly.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An evaluated inequality chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainVerdict<T> {
    pub chain_id: String,
    pub values: Vec<T>,
    pub slacks: Vec<T>,
    pub pass: bool,
    pub tol: T,
    pub witness: BTreeMap<String, f64>,
    /// Chains evaluated alongside this one; `pass` requires all of them.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub companions: Vec<ChainVerdict<T>>,
}

impl<T: Real> ChainVerdict<T> {
    pub fn new(chain_id: impl Into<String>, values: Vec<T>) -> Self {
        let slacks = values.windows(2).map(|w| w[1] - w[0]).collect();
        let mut v = ChainVerdict {
            chain_id: chain_id.into(),
            values,
            slacks,
            pass: false,
            tol: lit(DEFAULT_TOL),
            witness: BTreeMap::new(),
            companions: Vec::new(),
        };
        v.refresh();
        v
    }

    pub fn with_witness(mut self, key: &str, value: T) -> Self {
        self.witness.insert(key.to_string(), value.to_f64_lossy());
        self
    }

    pub fn with_companion(mut self, companion: ChainVerdict<T>) -> Self {
        self.companions.push(companion);
        self.refresh();
        self
    }

    /// Re-evaluates the verdict (and its companions) under another tolerance.
    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self.companions = std::mem::take(&mut self.companions).into_iter().map(|c| c.with_tol(tol)).collect();
        self.refresh();
        self
    }

    /// `max(1, max |v_i|)`
    pub fn scale(&self) -> T {
        self.values.iter().fold(T::one(), |m, v| m.max(v.abs()))
    }

    pub fn own_pass(&self) -> bool {
        let bound = -self.tol * self.scale();
        self.values.iter().all(|v| !v.is_nan()) && self.slacks.iter().all(|&s| s >= bound)
    }

    /// Smallest slack divided by its chain's scale, over this chain and its
    /// companions. `+inf` for a chain with a single member; NaN if any value is.
    pub fn min_relative_slack(&self) -> T {
        let scale = self.scale();
        let mut m = T::infinity();
        for s in self.slacks.iter().copied().chain(self.values.iter().filter(|v| v.is_nan()).copied()) {
            if s.is_nan() {
                return T::nan();
            }
            m = m.min(s / scale);
        }
        for c in &self.companions {
            let r = c.min_relative_slack();
            if r.is_nan() {
                return r;
            }
            m = m.min(r);
        }
        m
    }

    fn refresh(&mut self) {
        self.pass = self.own_pass() && self.companions.iter().all(|c| c.pass);
    }
}

fn check_in_domain<T: Real>(f: &FunctionSpec<T>, name: &str, x: T) -> Result<()> {
    if f.domain().contains(x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {x} is outside the domain {} of `{}`", f.domain(), f.reference())))
    }
}

fn check_weights<T: Real>(w: &[T]) -> Result<()> {
    if w.is_empty() {
        return Err(argument("weight list is empty"));
    }
    if w.iter().any(|&wi| !(wi > T::zero())) {
        return Err(argument("weights must be positive"));
    }
    let total: T = w.iter().copied().sum();
    if (total - T::one()).abs() > lit(1e-12) {
        return Err(argument(format!("weights must sum to 1 within 1e-12, got {total}")));
    }
    Ok(())
}

fn weighted_mean<T: Real>(w: &[T], x: &[T]) -> T {
    w.iter().zip(x).map(|(&wi, &xi)| wi * xi).sum()
}

fn require_flag(ok: bool, f: &dyn std::fmt::Display, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(argument(format!("function `{f}` is not flagged {what}")))
    }
}

/// `exp(n(1 - r^{-1/n})) <= r <= exp(n(r^{1/n} - 1))` for the mean ratio `r`.
pub fn young_ratio_chain<T: Real>(a: T, b: T, v: T, n: u64) -> Result<ChainVerdict<T>> {
    let r = scalar::young_ratio_bounds(a, b, v, n)?;
    Ok(ChainVerdict::new("prop-2.1", vec![r.lower, r.ratio, r.upper])
        .with_witness("a", a)
        .with_witness("b", b)
        .with_witness("v", v)
        .with_witness("n", lit(n as f64)))
}

/// `n(1 - x^{-1/n}) <= log x <= n(x^{1/n} - 1)`.
pub fn log_root_chain<T: Real>(x: T, n: u64) -> Result<ChainVerdict<T>> {
    let (a_n, b_n) = scalar::ratio_sequences(x, n)?;
    Ok(ChainVerdict::new("prop-2.1-log", vec![b_n, x.ln(), a_n]).with_witness("x", x).with_witness("n", lit(n as f64)))
}

/// For `x >= 1`: `a_{n+1}(x) <= a_n(x)` and, as a companion, `b_n(x) <= b_{n+1}(x)`.
pub fn sequence_monotonicity_chain<T: Real>(x: T, n: u64) -> Result<ChainVerdict<T>> {
    if !(x >= T::one()) {
        return Err(argument(format!("monotonicity is only asserted for x >= 1, got {x}")));
    }
    let (a_n, b_n) = scalar::ratio_sequences(x, n)?;
    let (a_next, b_next) = scalar::ratio_sequences(x, n + 1)?;
    Ok(ChainVerdict::new("rem-2.2", vec![a_next, a_n])
        .with_companion(ChainVerdict::new("rem-2.2-b", vec![b_n, b_next]))
        .with_witness("x", x)
        .with_witness("n", lit(n as f64)))
}

/// `min{D^2/(t-s), t-s} <= |D| <= max{D^2/(t-s), t-s}`, `D = f(t) - f(s)`.
///
/// For an increasing `f` the unsigned variant (with `D` in the middle) is
/// attached as a companion.
pub fn check_minmax_square<T: Real>(f: &FunctionSpec<T>, s: T, t: T) -> Result<ChainVerdict<T>> {
    if !(t > s) {
        return Err(argument(format!("requires t > s, got s={s}, t={t}")));
    }
    let d = f.eval(t)? - f.eval(s)?;
    let h = t - s;
    let sq = d * d / h;
    let (lo, hi) = (sq.min(h), sq.max(h));
    let mut v = ChainVerdict::new("thm-2.2", vec![lo, d.abs(), hi]).with_witness("s", s).with_witness("t", t);
    if f.flags().monotone_increasing {
        v = v.with_companion(ChainVerdict::new("rem-2.3-i", vec![lo, d, hi]));
    }
    Ok(v)
}

/// `min{D^p/h^{p-1}, D^q/h^{q-1}} <= D <= max{...}` for an increasing `f`,
/// `D = f(t) - f(s) > 0`, `h = t - s`, `p >= 1 >= q`.
///
/// With `(p, q) = (2, 0)` the sign requirement on `D` is lifted by using `|D|`,
/// which reduces the chain to [`check_minmax_square`].
pub fn check_minmax_power<T: Real>(f: &FunctionSpec<T>, s: T, t: T, p: T, q: T) -> Result<ChainVerdict<T>> {
    if !(t > s) {
        return Err(argument(format!("requires t > s, got s={s}, t={t}")));
    }
    if !(p >= T::one() && q <= T::one()) {
        return Err(argument(format!("requires p >= 1 >= q, got p={p}, q={q}")));
    }
    require_flag(f.flags().monotone_increasing, f.reference(), "monotone_increasing")?;
    let square_case = p == lit(2.0) && q == T::zero();
    let mut d = f.eval(t)? - f.eval(s)?;
    if !(d > T::zero()) {
        if square_case && d.is_finite() {
            d = d.abs();
        } else {
            return Err(argument(format!("f(t) - f(s) must be positive, got {d}")));
        }
    }
    let h = t - s;
    let term = |e: T| d.powf(e) / h.powf(e - T::one());
    let (x, y) = (term(p), term(q));
    Ok(ChainVerdict::new("rem-2.3-iii", vec![x.min(y), d, x.max(y)])
        .with_witness("s", s)
        .with_witness("t", t)
        .with_witness("p", p)
        .with_witness("q", q))
}

/// `psi(t) = min{(sum_i w_i f(t x_i + (1-t) mean) - f(mean))^2, t^2}`.
fn jensen_psi<T: Real>(f: &FunctionSpec<T>, w: &[T], x: &[T], t: T) -> Result<T> {
    let mean = weighted_mean(w, x);
    let mut g_t = T::zero();
    for (&wi, &xi) in w.iter().zip(x) {
        g_t = g_t + wi * f.eval(t * xi + (T::one() - t) * mean)?;
    }
    let d = g_t - f.eval(mean)?;
    Ok((d * d).min(t * t))
}

/// The function `g(t) = sum_i w_i f(t x_i + (1-t) mean)` that interpolates
/// between `f(mean)` at `t = 0` and `sum_i w_i f(x_i)` at `t = 1`.
pub fn jensen_interpolant<T: Real>(f: &FunctionSpec<T>, w: &[T], x: &[T], t: T) -> Result<T> {
    let mean = weighted_mean(w, x);
    let mut g = T::zero();
    for (&wi, &xi) in w.iter().zip(x) {
        g = g + wi * f.eval(t * xi + (T::one() - t) * mean)?;
    }
    Ok(g)
}

/// `f(sum w_i x_i) + psi(t)/t <= sum w_i f(x_i)` for convex `f`.
pub fn jensen_refinement<T: Real>(f: &FunctionSpec<T>, w: &[T], x: &[T], t: T) -> Result<ChainVerdict<T>> {
    require_flag(f.flags().convex, f.reference(), "convex")?;
    if w.len() != x.len() {
        return Err(Error::DimensionMismatch(w.len(), x.len()));
    }
    check_weights(w)?;
    if !(t > T::zero() && t <= T::one()) {
        return Err(argument(format!("requires 0 < t <= 1, got {t}")));
    }
    for &xi in x {
        check_in_domain(f, "x_i", xi)?;
    }
    let mean = weighted_mean(w, x);
    let psi = jensen_psi(f, w, x, t)?;
    let mut rhs = T::zero();
    for (&wi, &xi) in w.iter().zip(x) {
        rhs = rhs + wi * f.eval(xi)?;
    }
    Ok(ChainVerdict::new("cor-2.4", vec![f.eval(mean)? + psi / t, rhs]).with_witness("psi", psi).with_witness("t", t))
}

/// Arithmetic-geometric mean refinement obtained from [`jensen_refinement`]
/// with `f = -log`: `0 <= psi(t)/t <= log(A/G)`. When `G >= 1` the companion
/// `log(A/G) <= A - G` is attached as well.
pub fn amgm_refinement<T: Real>(w: &[T], x: &[T], t: T) -> Result<ChainVerdict<T>> {
    if w.len() != x.len() {
        return Err(Error::DimensionMismatch(w.len(), x.len()));
    }
    check_weights(w)?;
    if !(t > T::zero() && t <= T::one()) {
        return Err(argument(format!("requires 0 < t <= 1, got {t}")));
    }
    if x.iter().any(|&xi| !(xi > T::zero())) {
        return Err(Error::Domain("points must be positive".into()));
    }
    let a = weighted_mean(w, x);
    let log_g: T = w.iter().zip(x).map(|(&wi, &xi)| wi * xi.ln()).sum();
    let log_g_mix: T = w.iter().zip(x).map(|(&wi, &xi)| wi * (t * xi + (T::one() - t) * a).ln()).sum();
    let d = a.ln() - log_g_mix;
    let psi = (d * d).min(t * t);
    let log_ratio = a.ln() - log_g;
    let g = log_g.exp();
    let mut v = ChainVerdict::new("rem-2.5", vec![T::zero(), psi / t, log_ratio])
        .with_witness("A", a)
        .with_witness("G", g)
        .with_witness("t", t);
    if g >= T::one() {
        v = v.with_companion(ChainVerdict::new("rem-2.5-linear", vec![log_ratio, a - g]));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogMode {
    Convex,
    Concave,
}

/// Exponential bounds on `f(t)/f(s)` from the log-derivative at the endpoints.
///
/// Log-convex: `exp(f'(s)/f(s) (t-s)) <= f(t)/f(s) <= exp(f'(t)/f(t) (t-s))`.
/// Log-concave: `exp(f'(t)/f(t) (t-s)) <= f(t)/f(s) <= exp(f'(s)/f(s) (t-s))`.
pub fn logconvex_chain<T: Real>(f: &FunctionSpec<T>, s: T, t: T, mode: LogMode) -> Result<ChainVerdict<T>> {
    let flags = f.flags();
    let (id, ok) = match mode {
        LogMode::Convex => ("thm-2.6-convex", flags.log_convex),
        LogMode::Concave => ("thm-2.6-concave", flags.log_concave),
    };
    require_flag(ok, f.reference(), if mode == LogMode::Convex { "log_convex" } else { "log_concave" })?;
    let (fs, ft) = (positive_value(f, s)?, positive_value(f, t)?);
    let (ls, lt) = (f.deriv(s)? / fs, f.deriv(t)? / ft);
    let h = t - s;
    let (lo, hi) = match mode {
        LogMode::Convex => ((ls * h).exp(), (lt * h).exp()),
        LogMode::Concave => ((lt * h).exp(), (ls * h).exp()),
    };
    Ok(ChainVerdict::new(id, vec![lo, ft / fs, hi]).with_witness("s", s).with_witness("t", t))
}

/// `(t/s)^{s f'(s)/f(s)} <= f(t)/f(s) <= (t/s)^{t f'(t)/f(t)}` for a
/// geometrically convex `f`.
pub fn geomconvex_chain<T: Real>(f: &FunctionSpec<T>, s: T, t: T) -> Result<ChainVerdict<T>> {
    if !(s > T::zero() && t > T::zero()) {
        return Err(argument(format!("requires s, t > 0, got s={s}, t={t}")));
    }
    require_flag(f.flags().geometrically_convex, f.reference(), "geometrically_convex")?;
    let (fs, ft) = (positive_value(f, s)?, positive_value(f, t)?);
    let lr = (t / s).ln();
    let lo = (lr * s * f.deriv(s)? / fs).exp();
    let hi = (lr * t * f.deriv(t)? / ft).exp();
    Ok(ChainVerdict::new("thm-2.7", vec![lo, ft / fs, hi]).with_witness("s", s).with_witness("t", t))
}

/// `exp(G_0 t) <= g(a^{1-t} b^t) / (g(a)^{1-t} g(b)^t) <= exp(G_t t)`.
pub fn geom_interpolation_chain<T: Real>(g: &FunctionSpec<T>, a: T, b: T, t: T) -> Result<ChainVerdict<T>> {
    let flags = g.flags();
    require_flag(
        flags.geometrically_convex || (flags.log_convex && flags.monotone_increasing),
        g.reference(),
        "geometrically_convex (or log_convex and monotone_increasing)",
    )?;
    check_in_domain(g, "a", a)?;
    check_in_domain(g, "b", b)?;
    let g0 = scalar::geom_log_derivative(g, a, b, T::zero())?;
    let gt = scalar::geom_log_derivative(g, a, b, t)?;
    let c = scalar::weighted_means(a, b, t)?.geometric;
    let ratio =
        (positive_value(g, c)?.ln() - (T::one() - t) * positive_value(g, a)?.ln() - t * positive_value(g, b)?.ln())
            .exp();
    Ok(ChainVerdict::new("cor-2.8", vec![(g0 * t).exp(), ratio, (gt * t).exp()])
        .with_witness("a", a)
        .with_witness("b", b)
        .with_witness("t", t)
        .with_witness("G_0", g0)
        .with_witness("G_t", gt))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum JensenKind {
    LogConvex,
    GeometricallyConvex,
}

/// `L f(A) <= sum t_i f(a_i) <= R f(A)`, `A = sum t_i a_i`, with the
/// exponential (log-convex) or power (geometrically convex) weights.
pub fn jensen_exponential_bounds<T: Real>(
    f: &FunctionSpec<T>,
    weights: &[T],
    points: &[T],
    kind: JensenKind,
) -> Result<ChainVerdict<T>> {
    if weights.len() != points.len() {
        return Err(Error::DimensionMismatch(weights.len(), points.len()));
    }
    check_weights(weights)?;
    let flags = f.flags();
    match kind {
        JensenKind::LogConvex => require_flag(flags.log_convex, f.reference(), "log_convex")?,
        JensenKind::GeometricallyConvex => {
            require_flag(flags.geometrically_convex, f.reference(), "geometrically_convex")?;
            if points.iter().any(|&a| !(a > T::zero())) {
                return Err(Error::Domain("geometric kind requires positive points".into()));
            }
        }
    }
    for &a in points {
        check_in_domain(f, "a_i", a)?;
    }
    let mean = weighted_mean(weights, points);
    let f_mean = positive_value(f, mean)?;
    let lmean = f.deriv(mean)? / f_mean;
    let mut l = T::zero();
    let mut r = T::zero();
    let mut total = T::zero();
    for (&w, &a) in weights.iter().zip(points) {
        let fa = positive_value(f, a)?;
        let la = f.deriv(a)? / fa;
        total = total + w * fa;
        match kind {
            JensenKind::LogConvex => {
                l = l + w * (lmean * (a - mean)).exp();
                r = r + w * (la * (a - mean)).exp();
            }
            JensenKind::GeometricallyConvex => {
                let lr = (a / mean).ln();
                l = l + w * (lr * mean * lmean).exp();
                r = r + w * (lr * a * la).exp();
            }
        }
    }
    let id = match kind {
        JensenKind::LogConvex => "cor-2.9-i",
        JensenKind::GeometricallyConvex => "cor-2.9-ii",
    };
    Ok(ChainVerdict::new(id, vec![l * f_mean, total, r * f_mean]).with_witness("L", l).with_witness("R", r))
}

/// For a decreasing, geometrically convex `f`:
/// `f((1-t)x + ty) <= f(x^{1-t} y^t) <= f(x)^{1-t} f(y)^t <= (1-t) f(x) + t f(y)`.
pub fn geometric_to_convex_chain<T: Real>(f: &FunctionSpec<T>, x: T, y: T, t: T) -> Result<ChainVerdict<T>> {
    let flags = f.flags();
    require_flag(
        flags.monotone_decreasing && flags.geometrically_convex,
        f.reference(),
        "monotone_decreasing and geometrically_convex",
    )?;
    check_in_domain(f, "x", x)?;
    check_in_domain(f, "y", y)?;
    let means = scalar::weighted_means(x, y, t)?;
    let (fx, fy) = (positive_value(f, x)?, positive_value(f, y)?);
    let geo_f = ((T::one() - t) * fx.ln() + t * fy.ln()).exp();
    Ok(ChainVerdict::new(
        "rem-2.10",
        vec![f.eval(means.arithmetic)?, f.eval(means.geometric)?, geo_f, (T::one() - t) * fx + t * fy],
    )
    .with_witness("x", x)
    .with_witness("y", y)
    .with_witness("t", t))
}

/// `log x + theta(t, x)/t <= ln_t x` for `0 < t <= 1`.
pub fn deformed_log_refinement<T: Real>(t: T, x: T) -> Result<ChainVerdict<T>> {
    if !(t > T::zero() && t <= T::one()) {
        return Err(argument(format!("requires 0 < t <= 1, got {t}")));
    }
    let th = scalar::theta(t, x)?;
    Ok(ChainVerdict::new("lem-3.2", vec![x.ln() + th / t, scalar::deformed_log(t, x)?])
        .with_witness("t", t)
        .with_witness("x", x)
        .with_witness("theta", th))
}

/// Midpoint log-convexity of `g(t) = f(t)/((1-t) f(0) + t f(1))` and, as a
/// companion, of `h(t) = f(t)/(f(0)^{1-t} f(1)^t)`.
pub fn derived_logconvexity_check<T: Real>(f: &FunctionSpec<T>, u: T, w: T) -> Result<ChainVerdict<T>> {
    require_flag(f.flags().log_convex, f.reference(), "log_convex")?;
    for (name, x) in [("u", u), ("w", w)] {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(argument(format!("{name} must lie in [0, 1], got {x}")));
        }
    }
    if !f.domain().contains_interval(T::zero(), T::one()) {
        return Err(Error::Domain(format!("[0, 1] is not inside the domain {} of `{}`", f.domain(), f.reference())));
    }
    let (f0, f1) = (positive_value(f, T::zero())?, positive_value(f, T::one())?);
    let g = |x: T| -> Result<T> { Ok(positive_value(f, x)? / ((T::one() - x) * f0 + x * f1)) };
    let h = |x: T| -> Result<T> { Ok((positive_value(f, x)?.ln() - (T::one() - x) * f0.ln() - x * f1.ln()).exp()) };
    let mid = (u + w) / lit(2.0);
    let gv = ChainVerdict::new("lem-3.7", vec![g(mid)?, (g(u)? * g(w)?).sqrt()]);
    let hv = ChainVerdict::new("lem-3.7-h", vec![h(mid)?, (h(u)? * h(w)?).sqrt()]);
    Ok(gv.with_companion(hv).with_witness("u", u).with_witness("w", w))
}

/// Two-sided exponential bounds on the geometric/arithmetic mean ratio,
/// with the reciprocal form attached as a companion.
///
/// The witness carries `phi(t, b/a)` and `refinement_regime` (1 when
/// `a >= b` and `t <= 1/2`, where the lower reciprocal bound is at least 1).
pub fn young_refinement_chain<T: Real>(a: T, b: T, t: T) -> Result<ChainVerdict<T>> {
    let m = scalar::weighted_means(a, b, t)?;
    let x = b / a;
    let lx = x.ln();
    let ratio = m.geometric / m.arithmetic;
    let lo = ((lx + T::one() - x) * t).exp();
    let hi = ((lx - (b - a) / m.arithmetic) * t).exp();
    let ph = scalar::phi(t, x)?;
    let rewritten = ChainVerdict::new(
        "cor-3.8-reciprocal",
        vec![(ph * t).exp(), m.arithmetic / m.geometric, ((x - T::one() - lx) * t).exp()],
    );
    let regime = a >= b && t <= lit(0.5);
    Ok(ChainVerdict::new("cor-3.8", vec![lo, ratio, hi])
        .with_companion(rewritten)
        .with_witness("a", a)
        .with_witness("b", b)
        .with_witness("t", t)
        .with_witness("phi", ph)
        .with_witness("refinement_regime", if regime { T::one() } else { T::zero() }))
}

/// `exp(eta(x,s)(t-s)) ln_s x <= ln_t x <= exp(eta(x,t)(t-s)) ln_s x` for
/// `x >= 1` and `s, t > 0`.
pub fn tsallis_scalar_chain<T: Real>(x: T, s: T, t: T) -> Result<ChainVerdict<T>> {
    if !(x >= T::one()) {
        return Err(argument(format!("requires x >= 1, got {x}")));
    }
    if !(s > T::zero() && t > T::zero()) {
        return Err(argument(format!("requires s, t > 0, got s={s}, t={t}")));
    }
    let ls = scalar::deformed_log(s, x)?;
    let lt = scalar::deformed_log(t, x)?;
    let lo = (scalar::eta(x, s)? * (t - s)).exp() * ls;
    let hi = (scalar::eta(x, t)? * (t - s)).exp() * ls;
    Ok(ChainVerdict::new("lem-3.4", vec![lo, lt, hi]).with_witness("x", x).with_witness("s", s).with_witness("t", t))
}

/// Outcome of checking the hypotheses of the two-function operator
/// inequality on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateRecord<T> {
    pub conditions_hold: bool,
    /// `f` increasing and concave.
    pub f_increasing_concave: bool,
    pub g_convex: bool,
    /// `f >= g` on the grid.
    pub f_dominates_g: bool,
    /// `f(b) - f(a) >= M_ratio (g(b) - g(a)) >= 0`.
    pub ratio_condition: bool,
    /// `max f / min g`; infinite when `min g <= 0`.
    pub m_ratio: T,
    /// Minimum over the grid of `F(x) = (f(b)-f(a)) g(x) - (g(b)-g(a)) f(x)`.
    pub f_min: T,
}

/// Default grid resolution for [`two_function_gate`].
pub const GATE_GRID: usize = 257;

/// Empirical check of the hypotheses (increasing concave `f`, convex `g`,
/// `f >= g`, and the ratio condition) on `grid` equally spaced points of `[a, b]`.
pub fn two_function_gate<T: Real>(
    f: &FunctionSpec<T>,
    g: &FunctionSpec<T>,
    a: T,
    b: T,
    grid: usize,
) -> Result<GateRecord<T>> {
    if !(b > a) {
        return Err(argument(format!("empty interval [{a}, {b}]")));
    }
    if grid < 3 {
        return Err(argument("grid needs at least 3 points"));
    }
    let n = lit::<T>((grid - 1) as f64);
    let xs: Vec<T> = (0..grid).map(|k| a + (b - a) * lit::<T>(k as f64) / n).collect();
    let fv = xs.iter().map(|&x| f.eval(x)).collect::<Result<Vec<_>>>()?;
    let gv = xs.iter().map(|&x| g.eval(x)).collect::<Result<Vec<_>>>()?;
    let scale = fv.iter().chain(&gv).fold(T::one(), |m, v| m.max(v.abs()));
    let tol = lit::<T>(DEFAULT_TOL) * scale;

    let increasing = fv.windows(2).all(|w| w[1] - w[0] >= -tol);
    let concave = fv.windows(3).all(|w| w[0] + w[2] - w[1] - w[1] <= tol);
    let g_convex = gv.windows(3).all(|w| w[0] + w[2] - w[1] - w[1] >= -tol);
    let dominates = fv.iter().zip(&gv).all(|(&fx, &gx)| fx >= gx - tol);

    let df = fv[grid - 1] - fv[0];
    let dg = gv[grid - 1] - gv[0];
    let max_f = fv.iter().copied().fold(T::neg_infinity(), T::max);
    let min_g = gv.iter().copied().fold(T::infinity(), T::min);
    let m_ratio = if min_g > T::zero() { max_f / min_g } else { T::infinity() };
    let ratio_condition = m_ratio.is_finite() && df >= m_ratio * dg - tol && m_ratio * dg >= -tol;

    let f_min = fv.iter().zip(&gv).map(|(&fx, &gx)| df * gx - dg * fx).fold(T::infinity(), T::min);
    let f_increasing_concave = increasing && concave;
    Ok(GateRecord {
        conditions_hold: f_increasing_concave && g_convex && dominates && ratio_condition,
        f_increasing_concave,
        g_convex,
        f_dominates_g: dominates,
        ratio_condition,
        m_ratio,
        f_min,
    })
}
