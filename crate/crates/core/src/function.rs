//! Registered scalar test functions with derivatives, domains and
//! convexity-class flags.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::num::{lit, Real};
use crate::scalar;

/// Real interval with independently open or closed endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl<T: Real> Interval<T> {
    pub fn closed(lo: T, hi: T) -> Self {
        Interval { lo, hi, lo_closed: true, hi_closed: true }
    }

    pub fn open(lo: T, hi: T) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: false }
    }

    /// `(lo, hi]`
    pub fn left_open(lo: T, hi: T) -> Self {
        Interval { lo, hi, lo_closed: false, hi_closed: true }
    }

    pub fn contains(&self, x: T) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn contains_interval(&self, lo: T, hi: T) -> bool {
        self.contains(lo) && self.contains(hi)
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }
}

impl<T: Real> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// Convexity-class and monotonicity claims attached to a function.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub convex: bool,
    pub concave: bool,
    pub log_convex: bool,
    pub log_concave: bool,
    pub geometrically_convex: bool,
    pub monotone_increasing: bool,
    pub monotone_decreasing: bool,
}

/// Serializable reference to a registry function: constructor name plus its
/// numeric parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FunctionRef {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<f64>,
}

impl fmt::Display for FunctionRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
            write!(f, ":{}", p.join(":"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for FunctionRef {
    type Err = Error;

    /// Parses `id` or `id:p1:p2`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let id = parts.next().filter(|p| !p.is_empty()).ok_or_else(|| argument("empty function id"))?;
        let params = parts
            .map(|p| p.parse::<f64>().map_err(|_| argument(format!("bad function parameter `{p}`"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(FunctionRef { id: id.to_string(), params })
    }
}

type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// A scalar function together with its derivative, domain and flags.
#[derive(Clone)]
pub struct FunctionSpec<T> {
    reference: FunctionRef,
    domain: Interval<T>,
    eval: ScalarFn<T>,
    deriv: ScalarFn<T>,
    flags: Flags,
}

impl<T: Real> fmt::Debug for FunctionSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FunctionSpec")
            .field("id", &self.reference.to_string())
            .field("domain", &self.domain)
            .field("flags", &self.flags)
            .finish()
    }
}

impl<T: Real> FunctionSpec<T> {
    pub fn new(
        reference: FunctionRef,
        domain: Interval<T>,
        eval: impl Fn(T) -> T + Send + Sync + 'static,
        deriv: impl Fn(T) -> T + Send + Sync + 'static,
        flags: Flags,
    ) -> Self {
        FunctionSpec { reference, domain, eval: Arc::new(eval), deriv: Arc::new(deriv), flags }
    }

    pub fn id(&self) -> &str {
        &self.reference.id
    }

    pub fn reference(&self) -> &FunctionRef {
        &self.reference
    }

    pub fn domain(&self) -> Interval<T> {
        self.domain
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    fn check(&self, x: T) -> Result<()> {
        if self.domain.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain(format!("{x} is outside the domain {} of `{}`", self.domain, self.reference)))
        }
    }

    pub fn eval(&self, x: T) -> Result<T> {
        self.check(x)?;
        Ok((self.eval)(x))
    }

    pub fn deriv(&self, x: T) -> Result<T> {
        self.check(x)?;
        Ok((self.deriv)(x))
    }

    /// `f'(x) / f(x)`, requiring `f(x) > 0`.
    pub fn log_derivative(&self, x: T) -> Result<T> {
        let v = scalar::positive_value(self, x)?;
        Ok(self.deriv(x)? / v)
    }

    fn named(id: &str, params: &[f64]) -> FunctionRef {
        FunctionRef { id: id.to_string(), params: params.to_vec() }
    }

    /// `x` on `[-10, 10]`.
    pub fn identity() -> Self {
        let flags = Flags { convex: true, concave: true, monotone_increasing: true, ..Flags::default() };
        Self::new(Self::named("identity", &[]), Interval::closed(lit(-10.0), lit(10.0)), |x| x, |_| T::one(), flags)
    }

    /// `x^p` on `(0, 10]` for `p >= 1`.
    pub fn power(p: f64) -> Self {
        assert!(p >= 1.0, "power requires p >= 1");
        let pt: T = lit(p);
        let flags = Flags {
            convex: true,
            log_concave: true,
            geometrically_convex: true,
            monotone_increasing: true,
            ..Flags::default()
        };
        Self::new(
            Self::named("power", &[p]),
            Interval::left_open(T::zero(), lit(10.0)),
            move |x| x.powf(pt),
            move |x| pt * x.powf(pt - T::one()),
            flags,
        )
    }

    /// `sqrt(x)` on `(0, 100]`.
    pub fn sqrt() -> Self {
        let flags = Flags {
            concave: true,
            log_concave: true,
            geometrically_convex: true,
            monotone_increasing: true,
            ..Flags::default()
        };
        Self::new(
            Self::named("sqrt", &[]),
            Interval::left_open(T::zero(), lit(100.0)),
            |x| x.sqrt(),
            |x| lit::<T>(0.5) / x.sqrt(),
            flags,
        )
    }

    /// `exp(x)` on `[-5, 5]`.
    pub fn exp() -> Self {
        let flags = Flags {
            convex: true,
            log_convex: true,
            log_concave: true,
            geometrically_convex: true,
            monotone_increasing: true,
            ..Flags::default()
        };
        Self::new(Self::named("exp", &[]), Interval::closed(lit(-5.0), lit(5.0)), |x| x.exp(), |x| x.exp(), flags)
    }

    /// `exp(x^p)` on `[0, 2]`, `p >= 1`: log-convex and increasing.
    pub fn exp_power(p: f64) -> Self {
        assert!(p >= 1.0, "exp_power requires p >= 1");
        let pt: T = lit(p);
        let flags = Flags {
            convex: true,
            log_convex: true,
            geometrically_convex: true,
            monotone_increasing: true,
            ..Flags::default()
        };
        Self::new(
            Self::named("exp_power", &[p]),
            Interval::closed(T::zero(), lit(2.0)),
            move |x| x.powf(pt).exp(),
            move |x| {
                if x == T::zero() {
                    if pt == T::one() {
                        T::one()
                    } else {
                        T::zero()
                    }
                } else {
                    pt * x.powf(pt - T::one()) * x.powf(pt).exp()
                }
            },
            flags,
        )
    }

    /// `x^{-p}` on `[0.05, 20]`, `p > 0`: log-convex and decreasing.
    pub fn inverse_power(p: f64) -> Self {
        assert!(p > 0.0, "inverse_power requires p > 0");
        let pt: T = lit(p);
        let flags = Flags {
            convex: true,
            log_convex: true,
            geometrically_convex: true,
            monotone_decreasing: true,
            ..Flags::default()
        };
        Self::new(
            Self::named("inverse_power", &[p]),
            Interval::closed(lit(0.05), lit(20.0)),
            move |x| x.powf(-pt),
            move |x| -pt * x.powf(-pt - T::one()),
            flags,
        )
    }

    /// `1 / sin x` on `[0.05, pi/2 - 0.05]`.
    pub fn inv_sin() -> Self {
        let flags = Flags {
            convex: true,
            log_convex: true,
            geometrically_convex: true,
            monotone_decreasing: true,
            ..Flags::default()
        };
        Self::new(
            Self::named("inv_sin", &[]),
            Interval::closed(lit(0.05), T::FRAC_PI_2() - lit(0.05)),
            |x| x.sin().recip(),
            |x| -x.cos() / (x.sin() * x.sin()),
            flags,
        )
    }

    /// `-log x` on `(0, 1/e]`: positive, log-convex and decreasing there.
    pub fn neg_log() -> Self {
        let flags = Flags { convex: true, log_convex: true, monotone_decreasing: true, ..Flags::default() };
        Self::new(
            Self::named("neg_log", &[]),
            Interval::left_open(T::zero(), T::E().recip()),
            |x| -x.ln(),
            |x| -x.recip(),
            flags,
        )
    }

    /// `-log x` on `[lo, hi]` with `lo > 0`; log-convex when `hi <= 1/e`.
    pub fn neg_log_on(lo: f64, hi: f64) -> Self {
        assert!(lo > 0.0 && hi > lo);
        let flags =
            Flags { convex: true, log_convex: hi <= (-1.0f64).exp(), monotone_decreasing: true, ..Flags::default() };
        Self::new(
            Self::named("neg_log_on", &[lo, hi]),
            Interval::closed(lit(lo), lit(hi)),
            |x| -x.ln(),
            |x| -x.recip(),
            flags,
        )
    }

    /// `log x` on `[1, e]`: concave, increasing, log-concave where positive.
    pub fn log() -> Self {
        let flags = Flags { concave: true, log_concave: true, monotone_increasing: true, ..Flags::default() };
        Self::new(Self::named("log", &[]), Interval::closed(T::one(), T::E()), |x| x.ln(), |x| x.recip(), flags)
    }

    /// `log(1 + x)` on `[0, 50]`.
    pub fn log1p() -> Self {
        let flags = Flags { concave: true, monotone_increasing: true, ..Flags::default() };
        Self::new(
            Self::named("log1p", &[]),
            Interval::closed(T::zero(), lit(50.0)),
            |x| x.ln_1p(),
            |x| (T::one() + x).recip(),
            flags,
        )
    }

    /// `t -> ln_t(x)` for a fixed `x > 1`, on `t in [-3, 3]`: positive,
    /// increasing, convex and log-convex in `t`.
    pub fn deformed_log_in_t(x: f64) -> Self {
        assert!(x > 1.0, "deformed_log_in_t requires x > 1");
        let xt: T = lit(x);
        let l = xt.ln();
        let flags = Flags { convex: true, log_convex: true, monotone_increasing: true, ..Flags::default() };
        Self::new(
            Self::named("deformed_log_in_t", &[x]),
            Interval::closed(lit(-3.0), lit(3.0)),
            move |t| scalar::deformed_log(t, xt).unwrap_or(T::nan()),
            move |t| {
                // (x^t log x^t - (x^t - 1)) / t^2, -> (log x)^2 / 2 at t = 0
                let y = t * l;
                if y.abs() < lit(1e-4) {
                    l * l * (lit::<T>(0.5) + y / lit(3.0) + y * y / lit(8.0))
                } else {
                    (y * y.exp() - y.exp_m1()) / (t * t)
                }
            },
            flags,
        )
    }

    /// `t -> a^{1-t} b^t` on `[-2, 3]`: log-linear, so both log-convex and
    /// log-concave.
    pub fn geometric_path(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0, "geometric_path requires a, b > 0");
        let (la, lb): (T, T) = (lit::<T>(a).ln(), lit::<T>(b).ln());
        let monotone_increasing = b >= a;
        let flags = Flags {
            convex: true,
            log_convex: true,
            log_concave: true,
            monotone_increasing,
            monotone_decreasing: !monotone_increasing || a == b,
            ..Flags::default()
        };
        Self::new(
            Self::named("geometric_path", &[a, b]),
            Interval::closed(lit(-2.0), lit(3.0)),
            move |t| ((T::one() - t) * la + t * lb).exp(),
            move |t| (lb - la) * ((T::one() - t) * la + t * lb).exp(),
            flags,
        )
    }

    /// `c + log x` on `[1, e]`.
    pub fn shifted_log(c: f64) -> Self {
        let ct: T = lit(c);
        let flags = Flags { concave: true, monotone_increasing: true, ..Flags::default() };
        Self::new(
            Self::named("shifted_log", &[c]),
            Interval::closed(T::one(), T::E()),
            move |x| ct + x.ln(),
            |x| x.recip(),
            flags,
        )
    }

    /// `c + sqrt x` on `[lo, hi]` with `lo > 0`.
    pub fn shifted_sqrt(c: f64, lo: f64, hi: f64) -> Self {
        assert!(lo > 0.0 && hi > lo);
        let ct: T = lit(c);
        let flags = Flags { concave: true, monotone_increasing: true, ..Flags::default() };
        Self::new(
            Self::named("shifted_sqrt", &[c, lo, hi]),
            Interval::closed(lit(lo), lit(hi)),
            move |x| ct + x.sqrt(),
            |x| lit::<T>(0.5) / x.sqrt(),
            flags,
        )
    }

    /// `c + k (x - x0)^2` on `[lo, hi]` with `k >= 0`.
    pub fn quadratic(c: f64, k: f64, x0: f64, lo: f64, hi: f64) -> Self {
        assert!(k >= 0.0 && hi > lo);
        let (ct, kt, x0t): (T, T, T) = (lit(c), lit(k), lit(x0));
        let flags = Flags { convex: true, ..Flags::default() };
        Self::new(
            Self::named("quadratic", &[c, k, x0, lo, hi]),
            Interval::closed(lit(lo), lit(hi)),
            move |x| ct + kt * (x - x0t) * (x - x0t),
            move |x| lit::<T>(2.0) * kt * (x - x0t),
            flags,
        )
    }

    /// `slope (x - x0) + y0` on `[lo, hi]`; the chord helper for secant bounds.
    pub fn affine(slope: f64, x0: f64, y0: f64, lo: f64, hi: f64) -> Self {
        assert!(hi > lo);
        let (st, x0t, y0t): (T, T, T) = (lit(slope), lit(x0), lit(y0));
        let flags = Flags {
            convex: true,
            concave: true,
            monotone_increasing: slope >= 0.0,
            monotone_decreasing: slope <= 0.0,
            ..Flags::default()
        };
        Self::new(
            Self::named("affine", &[slope, x0, y0, lo, hi]),
            Interval::closed(lit(lo), lit(hi)),
            move |x| st * (x - x0t) + y0t,
            move |_| st,
            flags,
        )
    }

    /// `ln_t x` on `[lo, hi]` with `lo > 0`.
    pub fn deformed_log_in_x(t: f64, lo: f64, hi: f64) -> Self {
        assert!(lo > 0.0 && hi > lo);
        let tt: T = lit(t);
        let flags = Flags { convex: t >= 1.0, concave: t <= 1.0, monotone_increasing: true, ..Flags::default() };
        Self::new(
            Self::named("deformed_log_in_x", &[t, lo, hi]),
            Interval::closed(lit(lo), lit(hi)),
            move |x| scalar::deformed_log(tt, x).unwrap_or(T::nan()),
            move |x| x.powf(tt - T::one()),
            flags,
        )
    }
}

impl<T: Real> FunctionSpec<T> {
    /// Samples `points` interior points and checks the derivative against a
    /// central difference and every claimed flag against finite differences.
    pub fn validate(&self, points: usize) -> Result<()> {
        let fail = |reason: String| Error::FunctionContract { id: self.reference.to_string(), reason };
        let d = self.domain;
        let pad = d.width() * lit(1e-3);
        let (lo, hi) = (d.lo + pad, d.hi - pad);
        let n = points.max(3);
        let xs: Vec<T> = (0..n).map(|k| lo + (hi - lo) * lit::<T>(k as f64) / lit::<T>((n - 1) as f64)).collect();
        let step = (hi - lo) * lit(1e-6);
        let rel = lit::<T>(1e-5);
        for &x in &xs {
            let fd = ((self.eval)(x + step) - (self.eval)(x - step)) / (step + step);
            let df = (self.deriv)(x);
            if (fd - df).abs() > rel * (T::one() + df.abs()) {
                return Err(fail(format!("derivative {df} at {x} disagrees with finite difference {fd}")));
            }
        }
        let fv: Vec<T> = xs.iter().map(|&x| (self.eval)(x)).collect();
        let scale = fv.iter().fold(T::one(), |m, v| m.max(v.abs()));
        let tol = lit::<T>(1e-9) * scale;
        let second = |v: &[T]| -> Vec<T> { v.windows(3).map(|w| w[0] + w[2] - w[1] - w[1]).collect() };
        let f = self.flags;
        let checks: [FlagCheck<'_>; 7] = [
            (f.convex, "convex", Box::new(|| second(&fv).iter().all(|&c| c >= -tol))),
            (f.concave, "concave", Box::new(|| second(&fv).iter().all(|&c| c <= tol))),
            (f.monotone_increasing, "monotone_increasing", Box::new(|| fv.windows(2).all(|w| w[1] >= w[0] - tol))),
            (f.monotone_decreasing, "monotone_decreasing", Box::new(|| fv.windows(2).all(|w| w[1] <= w[0] + tol))),
            (f.log_convex, "log_convex", Box::new(|| log_second(&fv).is_some_and(|c| c.iter().all(|&c| c >= -tol)))),
            (f.log_concave, "log_concave", Box::new(|| log_second(&fv).is_some_and(|c| c.iter().all(|&c| c <= tol)))),
            (
                f.geometrically_convex,
                "geometrically_convex",
                Box::new(|| {
                    if !(hi > T::zero()) {
                        return false;
                    }
                    let glo = if lo > T::zero() { lo } else { hi * lit(1e-3) };
                    let (a, b) = (glo.ln(), hi.ln());
                    let gv: Vec<T> = (0..n)
                        .map(|k| (self.eval)((a + (b - a) * lit::<T>(k as f64) / lit::<T>((n - 1) as f64)).exp()))
                        .collect();
                    log_second(&gv).is_some_and(|c| c.iter().all(|&c| c >= -tol))
                }),
            ),
        ];
        for (claimed, name, check) in checks.iter() {
            if *claimed && !check() {
                return Err(fail(format!("claimed {name} but the samples disagree")));
            }
        }
        Ok(())
    }
}

fn log_second<T: Real>(v: &[T]) -> Option<Vec<T>> {
    if v.iter().any(|&x| !(x > T::zero())) {
        return None;
    }
    let l: Vec<T> = v.iter().map(|x| x.ln()).collect();
    Some(l.windows(3).map(|w| w[0] + w[2] - w[1] - w[1]).collect())
}

/// Claimed flag, its name and a finite-difference test of the claim.
type FlagCheck<'a> = (bool, &'a str, Box<dyn Fn() -> bool + 'a>);

/// Reconstructs a registry function from its reference.
pub fn resolve<T: Real>(r: &FunctionRef) -> Result<FunctionSpec<T>> {
    let p = &r.params;
    let need = |k: usize| -> Result<()> {
        if p.len() == k {
            Ok(())
        } else {
            Err(argument(format!("function `{}` takes {k} parameter(s), got {}", r.id, p.len())))
        }
    };
    let spec = match r.id.as_str() {
        "identity" => need(0).map(|_| FunctionSpec::identity())?,
        "sqrt" => need(0).map(|_| FunctionSpec::sqrt())?,
        "exp" => need(0).map(|_| FunctionSpec::exp())?,
        "inv_sin" => need(0).map(|_| FunctionSpec::inv_sin())?,
        "neg_log" => need(0).map(|_| FunctionSpec::neg_log())?,
        "log" => need(0).map(|_| FunctionSpec::log())?,
        "log1p" => need(0).map(|_| FunctionSpec::log1p())?,
        "power" => {
            need(1)?;
            guard(p[0] >= 1.0, "power requires p >= 1")?;
            FunctionSpec::power(p[0])
        }
        "exp_power" => {
            need(1)?;
            guard(p[0] >= 1.0, "exp_power requires p >= 1")?;
            FunctionSpec::exp_power(p[0])
        }
        "inverse_power" => {
            need(1)?;
            guard(p[0] > 0.0, "inverse_power requires p > 0")?;
            FunctionSpec::inverse_power(p[0])
        }
        "deformed_log_in_t" => {
            need(1)?;
            guard(p[0] > 1.0, "deformed_log_in_t requires x > 1")?;
            FunctionSpec::deformed_log_in_t(p[0])
        }
        "geometric_path" => {
            need(2)?;
            guard(p[0] > 0.0 && p[1] > 0.0, "geometric_path requires a, b > 0")?;
            FunctionSpec::geometric_path(p[0], p[1])
        }
        "shifted_log" => need(1).map(|_| FunctionSpec::shifted_log(p[0]))?,
        "shifted_sqrt" => {
            need(3)?;
            guard(p[1] > 0.0 && p[2] > p[1], "shifted_sqrt requires 0 < lo < hi")?;
            FunctionSpec::shifted_sqrt(p[0], p[1], p[2])
        }
        "quadratic" => {
            need(5)?;
            guard(p[1] >= 0.0 && p[4] > p[3], "quadratic requires k >= 0 and lo < hi")?;
            FunctionSpec::quadratic(p[0], p[1], p[2], p[3], p[4])
        }
        "affine" => {
            need(5)?;
            guard(p[4] > p[3], "affine requires lo < hi")?;
            FunctionSpec::affine(p[0], p[1], p[2], p[3], p[4])
        }
        "neg_log_on" => {
            need(2)?;
            guard(p[0] > 0.0 && p[1] > p[0], "neg_log_on requires 0 < lo < hi")?;
            FunctionSpec::neg_log_on(p[0], p[1])
        }
        "deformed_log_in_x" => {
            need(3)?;
            guard(p[1] > 0.0 && p[2] > p[1], "deformed_log_in_x requires 0 < lo < hi")?;
            FunctionSpec::deformed_log_in_x(p[0], p[1], p[2])
        }
        other => return Err(argument(format!("unknown function `{other}`"))),
    };
    Ok(spec)
}

fn guard(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(argument(msg))
    }
}

/// Representative members of the registry, one per constructor with typical
/// parameters.
pub fn registry<T: Real>() -> Vec<FunctionSpec<T>> {
    vec![
        FunctionSpec::identity(),
        FunctionSpec::power(2.0),
        FunctionSpec::power(3.0),
        FunctionSpec::sqrt(),
        FunctionSpec::exp(),
        FunctionSpec::exp_power(1.0),
        FunctionSpec::exp_power(2.5),
        FunctionSpec::exp_power(4.0),
        FunctionSpec::inverse_power(0.5),
        FunctionSpec::inverse_power(4.0),
        FunctionSpec::inv_sin(),
        FunctionSpec::neg_log(),
        FunctionSpec::neg_log_on(0.5, 20.0),
        FunctionSpec::log(),
        FunctionSpec::log1p(),
        FunctionSpec::deformed_log_in_t(2.0),
        FunctionSpec::geometric_path(1.0, 4.0),
        FunctionSpec::shifted_log(3.0),
        FunctionSpec::shifted_sqrt(2.0, 1.0, 4.0),
        FunctionSpec::quadratic(1.0, 0.01, 1.0, 1.0, 4.0),
        FunctionSpec::affine(0.5, 1.0, 0.0, 1.0, 3.0),
        FunctionSpec::deformed_log_in_x(0.5, 1.0, 3.0),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_membership() {
        let i = Interval::left_open(0.0, 1.0);
        assert!(!i.contains(0.0));
        assert!(i.contains(1.0));
        assert!(i.contains(0.5));
        assert!(!i.contains(1.0 + 1e-12));
        assert_eq!(i.to_string(), "(0, 1]");
    }

    #[test]
    fn eval_checks_domain() {
        let f = FunctionSpec::<f64>::neg_log();
        assert!(f.eval(0.2).is_ok());
        assert!(matches!(f.eval(0.5), Err(Error::Domain(_))));
        assert!(matches!(f.deriv(0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn references_round_trip_through_resolve() {
        for f in registry::<f64>() {
            let text = f.reference().to_string();
            let parsed: FunctionRef = text.parse().unwrap();
            let g = resolve::<f64>(&parsed).unwrap();
            assert_eq!(g.reference(), f.reference());
            let d = f.domain();
            let mid = d.lo + 0.37 * d.width();
            assert_eq!(f.eval(mid).unwrap(), g.eval(mid).unwrap());
        }
    }

    #[test]
    fn resolve_rejects_bad_references() {
        assert!(resolve::<f64>(&"nope".parse().unwrap()).is_err());
        assert!(resolve::<f64>(&"power".parse().unwrap()).is_err());
        assert!(resolve::<f64>(&"power:0.5".parse().unwrap()).is_err());
        assert!("".parse::<FunctionRef>().is_err());
        assert!("power:x".parse::<FunctionRef>().is_err());
    }

    #[test]
    fn registry_members_satisfy_their_flags() {
        for f in registry::<f64>() {
            f.validate(401).unwrap_or_else(|e| panic!("{e}"));
        }
    }

    #[test]
    fn validate_catches_false_claims() {
        let f = FunctionSpec::<f64>::new(
            FunctionRef { id: "bogus".into(), params: vec![] },
            Interval::closed(0.0, 1.0),
            |x| x * x,
            |x| 2.0 * x,
            Flags { concave: true, ..Flags::default() },
        );
        assert!(matches!(f.validate(50), Err(Error::FunctionContract { .. })));
        let g = FunctionSpec::<f64>::new(
            FunctionRef { id: "bad_deriv".into(), params: vec![] },
            Interval::closed(0.0, 1.0),
            |x| x * x,
            |x| x,
            Flags::default(),
        );
        assert!(g.validate(50).is_err());
    }

    #[test]
    fn deformed_log_in_t_derivative_near_zero() {
        let f = FunctionSpec::<f64>::deformed_log_in_t(3.0);
        let l = 3f64.ln();
        assert!((f.deriv(0.0).unwrap() - l * l / 2.0).abs() < 1e-15);
        let h = 1e-5;
        let fd = (f.eval(2e-5 + h).unwrap() - f.eval(2e-5 - h).unwrap()) / (2.0 * h);
        assert!((f.deriv(2e-5).unwrap() - fd).abs() < 1e-8);
    }
}
