//! Relative operator entropies and Loewner-checked operator inequality chains.
//!
//! For positive definite `A`, `B` with `C = A^{-1/2} B A^{-1/2}`:
//! `S(A|B) = A^{1/2} log(C) A^{1/2}`, `T_t(A|B) = A^{1/2} ln_t(C) A^{1/2}` and
//! `S_t(A|B) = A^{1/2} C^t log(C) A^{1/2}`.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::catalog::{two_function_gate, ChainVerdict, GATE_GRID};
use crate::error::{argument, not_applicable, Error, Result};
use crate::function::FunctionSpec;
use crate::linalg::{loewner_compare, Congruence, LoewnerVerdict, SymmetricMatrix};
use crate::num::{lit, Real};
use crate::scalar;

/// Cushion applied when testing spectral hypotheses such as `m >= 1`.
pub const REGIME_CUSHION: f64 = 1e-12;

/// An evaluated chain `L_0 <= L_1 <= ... <= L_k` in the Loewner order.
#[derive(Debug, Clone, Serialize)]
pub struct OperatorChainVerdict<T: Real> {
    pub chain_id: String,
    pub links: Vec<SymmetricMatrix<T>>,
    pub verdicts: Vec<LoewnerVerdict<T>>,
    pub pass: bool,
    pub tol: T,
    /// Which case of a multi-case statement was checked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    /// Hypothesis record: `m`, `M`, `t`, `s` and refinement terms as applicable.
    pub regime: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub companions: Vec<OperatorChainVerdict<T>>,
}

impl<T: Real> OperatorChainVerdict<T> {
    pub fn new(chain_id: impl Into<String>, links: Vec<SymmetricMatrix<T>>, tol: T) -> Result<Self> {
        let verdicts = links.windows(2).map(|w| loewner_compare(&w[0], &w[1], tol)).collect::<Result<Vec<_>>>()?;
        let mut v = OperatorChainVerdict {
            chain_id: chain_id.into(),
            links,
            verdicts,
            pass: false,
            tol,
            case: None,
            regime: BTreeMap::new(),
            companions: Vec::new(),
        };
        v.refresh();
        Ok(v)
    }

    pub fn with_case(mut self, case: &str) -> Self {
        self.case = Some(case.to_string());
        self
    }

    pub fn with_regime(mut self, key: &str, value: T) -> Self {
        self.regime.insert(key.to_string(), value.to_f64_lossy());
        self
    }

    pub fn with_companion(mut self, c: OperatorChainVerdict<T>) -> Self {
        self.companions.push(c);
        self.refresh();
        self
    }

    /// Re-evaluates every link under another tolerance without recomputing
    /// eigenvalues.
    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        for v in &mut self.verdicts {
            v.tol = tol;
            v.holds = v.min_slack_eigenvalue >= -tol * v.scale;
        }
        self.companions = std::mem::take(&mut self.companions).into_iter().map(|c| c.with_tol(tol)).collect();
        self.refresh();
        self
    }

    pub fn own_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    /// Smallest `min eig(L_{i+1} - L_i) / scale` over all links and companions.
    pub fn min_relative_slack(&self) -> T {
        let own = self.verdicts.iter().map(|v| v.relative_slack());
        let comp = self.companions.iter().map(|c| c.min_relative_slack());
        own.chain(comp).fold(T::infinity(), |m, s| if m.is_nan() || s.is_nan() { T::nan() } else { m.min(s) })
    }

    fn refresh(&mut self) {
        self.pass = self.own_pass() && self.companions.iter().all(|c| c.pass);
    }
}

/// Validated pair: both matrices positive definite, congruence data ready.
struct Pair<T: Real> {
    a: SymmetricMatrix<T>,
    b: SymmetricMatrix<T>,
    cong: Congruence<T>,
}

impl<T: Real> Pair<T> {
    fn new(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<Self> {
        b.eigen_pd()?;
        Ok(Pair { a: a.clone(), b: b.clone(), cong: Congruence::new(a, b)? })
    }

    fn bounds(&self) -> (T, T) {
        let s = self.cong.relative_spectrum();
        (s[0], s[s.len() - 1])
    }

    fn s(&self) -> Result<SymmetricMatrix<T>> {
        self.cong.apply(|x| Ok(x.ln()))
    }

    fn t(&self, t: T) -> Result<SymmetricMatrix<T>> {
        self.cong.apply(|x| scalar::deformed_log(t, x))
    }

    fn s_gen(&self, t: T) -> Result<SymmetricMatrix<T>> {
        self.cong.apply(|x| Ok(x.powf(t) * x.ln()))
    }

    fn b_minus_a(&self) -> Result<SymmetricMatrix<T>> {
        self.b.sub(&self.a)
    }
}

/// `S(A|B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}`
pub fn relative_entropy<T: Real>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>) -> Result<SymmetricMatrix<T>> {
    Pair::new(a, b)?.s()
}

/// `T_t(A|B) = A^{1/2} ln_t(A^{-1/2} B A^{-1/2}) A^{1/2}`; `T_0 = S`.
pub fn tsallis_entropy<T: Real>(a: &SymmetricMatrix<T>, b: &SymmetricMatrix<T>, t: T) -> Result<SymmetricMatrix<T>> {
    Pair::new(a, b)?.t(t)
}

/// `S_t(A|B) = A^{1/2} C^t log(C) A^{1/2}`, `C = A^{-1/2} B A^{-1/2}`.
pub fn generalized_entropy<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    t: T,
) -> Result<SymmetricMatrix<T>> {
    Pair::new(a, b)?.s_gen(t)
}

/// `A - A B^{-1} A <= T_{-t} <= S <= T_t <= B - A` for `0 < t <= 1`.
pub fn check_zou_chain<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    t: T,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    if !(t > T::zero() && t <= T::one()) {
        return Err(argument(format!("requires 0 < t <= 1, got {t}")));
    }
    let p = Pair::new(a, b)?;
    let b_inv = b.eigen_pd()?.map(|x| Ok(x.recip()))?;
    let lower = a.sub(&a.congruence(&b_inv)?)?;
    let links = vec![lower, p.t(-t)?, p.s()?, p.t(t)?, p.b_minus_a()?];
    let (m, mm) = p.bounds();
    Ok(OperatorChainVerdict::new("zou", links, tol)?.with_regime("t", t).with_regime("m", m).with_regime("M", mm))
}

/// Refined `S <= T_t` for `0 < t <= 1`, with the additive term `theta/t A`
/// taken at `M` when `M < 1` (case i), at `m` when `m > 1` (case iii), and
/// absent when `m <= 1 <= M` (case ii).
#[allow(non_snake_case)]
pub fn check_refined_ST<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    t: T,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    if !(t > T::zero() && t <= T::one()) {
        return Err(argument(format!("requires 0 < t <= 1, got {t}")));
    }
    let p = Pair::new(a, b)?;
    let (m, mm) = p.bounds();
    let cushion = lit::<T>(REGIME_CUSHION);
    let (case, theta) = if mm < T::one() - cushion {
        ("i", scalar::theta(t, mm)?)
    } else if m > T::one() + cushion {
        ("iii", scalar::theta(t, m)?)
    } else {
        ("ii", T::zero())
    };
    let lower = SymmetricMatrix::combine(T::one(), &p.s()?, theta / t, a)?;
    Ok(OperatorChainVerdict::new("thm-3.3", vec![lower, p.t(t)?], tol)?
        .with_case(case)
        .with_regime("t", t)
        .with_regime("m", m)
        .with_regime("M", mm)
        .with_regime("theta", theta))
}

/// Relation between `T_s` and `T_t` for `mA <= B <= MA` with `1 <= m`:
///
/// * `t >= s`: `0 <= e^{eta(m,s)(t-s)} T_s <= T_t <= e^{eta(M,t)(t-s)} T_s`
/// * `s >= t`: `0 <= e^{eta(M,s)(t-s)} T_s <= T_t <= e^{eta(m,t)(t-s)} T_s`
pub fn check_tsallis_relation<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    s: T,
    t: T,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    if !(s > T::zero() && t > T::zero()) {
        return Err(argument(format!("requires s, t > 0, got s={s}, t={t}")));
    }
    let p = Pair::new(a, b)?;
    let (m, mm) = p.bounds();
    if m < T::one() - lit(REGIME_CUSHION) {
        return Err(not_applicable(format!("requires m >= 1, got m = {m}")));
    }
    let m1 = m.max(T::one());
    let mm1 = mm.max(T::one());
    let (case, lo_x, hi_x) = if t >= s { ("i", m1, mm1) } else { ("ii", mm1, m1) };
    let lo = (scalar::eta(lo_x, s)? * (t - s)).exp();
    let hi = (scalar::eta(hi_x, t)? * (t - s)).exp();
    let ts = p.t(s)?;
    let links = vec![SymmetricMatrix::zeros(a.n()), ts.scale(lo), p.t(t)?, ts.scale(hi)];
    Ok(OperatorChainVerdict::new("thm-3.5", links, tol)?
        .with_case(case)
        .with_regime("s", s)
        .with_regime("t", t)
        .with_regime("m", m)
        .with_regime("M", mm)
        .with_regime("lower_factor", lo)
        .with_regime("upper_factor", hi))
}

/// Constant bounds on `S(A|B)`:
///
/// * `M <= 1/e`: `-exp((em-1)/(em log m)) A <= S <= -exp(1-eM) A <= 0`
/// * `1 <= m <= M <= e`: `0 <= exp((m-e)/(m log m)) A <= S <= exp((M-e)/e) A`,
///   where the lower coefficient is 0 at `m = 1`.
///
/// Any other relative spectrum is not applicable.
pub fn check_roe_bounds<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    let p = Pair::new(a, b)?;
    let (m, mm) = p.bounds();
    let e = T::E();
    let cushion = lit::<T>(REGIME_CUSHION);
    let s = p.s()?;
    if mm <= e.recip() + cushion {
        let em = e * m;
        let lo = -((em - T::one()) / (em * m.ln())).exp();
        let hi = -(T::one() - e * mm).exp();
        let links = vec![a.scale(lo), s, a.scale(hi), SymmetricMatrix::zeros(a.n())];
        Ok(OperatorChainVerdict::new("thm-3.6", links, tol)?
            .with_case("i")
            .with_regime("m", m)
            .with_regime("M", mm)
            .with_regime("lower_coefficient", lo)
            .with_regime("upper_coefficient", hi))
    } else if m >= T::one() - cushion && mm <= e + cushion {
        let lo = if m > T::one() { ((m - e) / (m * m.ln())).exp() } else { T::zero() };
        let hi = ((mm - e) / e).exp();
        let links = vec![SymmetricMatrix::zeros(a.n()), a.scale(lo), s, a.scale(hi)];
        Ok(OperatorChainVerdict::new("thm-3.6", links, tol)?
            .with_case("ii")
            .with_regime("m", m)
            .with_regime("M", mm)
            .with_regime("lower_coefficient", lo)
            .with_regime("upper_coefficient", hi))
    } else {
        Err(not_applicable(format!("relative spectrum [{m}, {mm}] is in neither (0, 1/e] nor [1, e]")))
    }
}

/// Chord bound for `T_t` when `1 <= m < M`:
/// `chord <= T_t` for `t <= 1`, `T_t <= chord` for `t > 1`, where
/// `chord = ((ln_t M - ln_t m)/(M-m)) B + ((M ln_t m - m ln_t M)/(M-m)) A`.
///
/// When `m = 1` the chord is `(ln_t M/(M-1))(B - A)` and the companion chain
/// with `B - A` on the far side is attached.
pub fn check_troe_linear_bound<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    t: T,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    let p = Pair::new(a, b)?;
    let (m, mm) = p.bounds();
    if m < T::one() - lit(REGIME_CUSHION) {
        return Err(not_applicable(format!("requires m >= 1, got m = {m}")));
    }
    if mm - m < lit(1e-8) {
        return Err(not_applicable(format!("secant undefined: M - m = {}", mm - m)));
    }
    let m = m.max(T::one());
    let (lm, lmm) = (scalar::deformed_log(t, m)?, scalar::deformed_log(t, mm)?);
    let alpha = (lmm - lm) / (mm - m);
    let beta = (mm * lm - m * lmm) / (mm - m);
    let chord = SymmetricMatrix::combine(alpha, b, beta, a)?;
    let tt = p.t(t)?;
    let concave = t <= T::one();
    let links = if concave { vec![chord, tt.clone()] } else { vec![tt.clone(), chord] };
    let mut v = OperatorChainVerdict::new("thm-3.11", links, tol)?
        .with_case(if concave { "t<=1" } else { "t>1" })
        .with_regime("t", t)
        .with_regime("m", m)
        .with_regime("M", mm)
        .with_regime("alpha", alpha)
        .with_regime("beta", beta);
    if (m - T::one()).abs() <= lit(1e-9) {
        let d = p.b_minus_a()?;
        let k = lmm / (mm - T::one());
        let links = if concave { vec![d.scale(k), tt, d] } else { vec![d.clone(), tt, d.scale(k)] };
        v = v.with_companion(OperatorChainVerdict::new("rem-3.13-i", links, tol)?);
    }
    Ok(v)
}

/// `S <= T_p <= S_p` for `p > 0`, reversed for `p < 0`.
#[allow(non_snake_case)]
pub fn check_ordering_S_Tp_Sp<T: Real>(
    a: &SymmetricMatrix<T>,
    b: &SymmetricMatrix<T>,
    p: T,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    if p == T::zero() || !p.is_finite() {
        return Err(argument(format!("requires p != 0, got {p}")));
    }
    let pair = Pair::new(a, b)?;
    let (s, tp, sp) = (pair.s()?, pair.t(p)?, pair.s_gen(p)?);
    let (case, links) = if p > T::zero() { ("p>0", vec![s, tp, sp]) } else { ("p<0", vec![sp, tp, s]) };
    let (m, mm) = pair.bounds();
    Ok(OperatorChainVerdict::new("prop-3.10", links, tol)?
        .with_case(case)
        .with_regime("p", p)
        .with_regime("m", m)
        .with_regime("M", mm))
}

/// `<f(A)h, h> <= f(<Ah, h>)` for concave `f` and a unit vector `h`
/// (normalized here).
pub fn jensen_operator_check<T: Real>(f: &FunctionSpec<T>, a: &SymmetricMatrix<T>, h: &[T]) -> Result<ChainVerdict<T>> {
    if !f.flags().concave {
        return Err(argument(format!("function `{}` is not flagged concave", f.reference())));
    }
    let h = normalized(h)?;
    let fa = a.eigen()?.map(|x| f.eval(x))?;
    let lhs = fa.quadratic_form(&h)?;
    let rhs = f.eval(a.quadratic_form(&h)?)?;
    Ok(ChainVerdict::new("lem-2.11", vec![lhs, rhs]))
}

fn normalized<T: Real>(h: &[T]) -> Result<Vec<T>> {
    let norm = h.iter().map(|&x| x * x).sum::<T>().sqrt();
    if !(norm > T::zero()) || !norm.is_finite() {
        return Err(argument("vector must be nonzero and finite"));
    }
    Ok(h.iter().map(|&x| x / norm).collect())
}

/// Gaussian direction normalized to the unit sphere.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| StandardNormal.sample(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-8 {
            return v.iter().map(|x| lit(x / norm)).collect();
        }
    }
}

/// Instance shapes for the two-function operator inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TwoFunctionMode {
    /// `(g(b)-g(a)) f(<Ah,h>) <= (f(b)-f(a)) <g(A)h,h>` over `draws` random unit vectors.
    Expectation { draws: usize },
    /// `A^{1/2} f(C) A^{1/2} <= k A^{1/2} g(C) A^{1/2}` with `aA <= B <= bA`.
    Congruence,
    /// `f(B) <= k g(A)` with `B <= A`.
    Majorize,
}

/// Spectrum of a matrix inside `[a, b]` up to the regime cushion.
fn spectrum_within<T: Real>(lo: T, hi: T, a: T, b: T) -> bool {
    let c = lit::<T>(REGIME_CUSHION) * T::one().max(b.abs());
    lo >= a - c && hi <= b + c
}

/// Two-function operator inequality. The hypotheses on `(f, g)` are checked
/// by [`two_function_gate`] on `[a, b]`; if they fail, or the spectra leave
/// `[a, b]`, the instance is not applicable.
#[allow(clippy::too_many_arguments)]
pub fn check_two_function_operator<T: Real, R: Rng + ?Sized>(
    f: &FunctionSpec<T>,
    g: &FunctionSpec<T>,
    interval: (T, T),
    a_mat: &SymmetricMatrix<T>,
    b_mat: Option<&SymmetricMatrix<T>>,
    mode: TwoFunctionMode,
    rng: &mut R,
    tol: T,
) -> Result<OperatorChainVerdict<T>> {
    let (a, b) = interval;
    let gate = two_function_gate(f, g, a, b, GATE_GRID)?;
    if !gate.conditions_hold {
        return Err(not_applicable(format!(
            "hypotheses fail on [{a}, {b}]: increasing-concave f {}, convex g {}, f >= g {}, ratio condition {}",
            gate.f_increasing_concave, gate.g_convex, gate.f_dominates_g, gate.ratio_condition
        )));
    }
    let clamp = |x: T| x.max(a).min(b);
    let fc = |x: T| f.eval(clamp(x));
    let gc = |x: T| g.eval(clamp(x));
    let df = f.eval(b)? - f.eval(a)?;
    let dg = g.eval(b)? - g.eval(a)?;
    let ea = a_mat.eigen()?;
    let base = |v: OperatorChainVerdict<T>| {
        v.with_regime("a", a).with_regime("b", b).with_regime("m_ratio", gate.m_ratio).with_regime("F_min", gate.f_min)
    };
    match mode {
        TwoFunctionMode::Expectation { draws } => {
            if !spectrum_within(ea.min(), ea.max(), a, b) {
                return Err(not_applicable(format!("spectrum [{}, {}] leaves [{a}, {b}]", ea.min(), ea.max())));
            }
            let g_a = ea.map(gc)?;
            let mut worst: Option<(T, T, T)> = None;
            for _ in 0..draws.max(1) {
                let h = random_unit_vector::<T, R>(rng, a_mat.n());
                let lhs = dg * fc(a_mat.quadratic_form(&h)?)?;
                let rhs = df * g_a.quadratic_form(&h)?;
                let scale = T::one().max(lhs.abs()).max(rhs.abs());
                let rel = (rhs - lhs) / scale;
                if worst.is_none_or(|(w, _, _)| rel < w) {
                    worst = Some((rel, lhs, rhs));
                }
            }
            let (_, lhs, rhs) = worst.expect("at least one draw");
            let links = vec![SymmetricMatrix::diag(&[lhs]), SymmetricMatrix::diag(&[rhs])];
            Ok(base(OperatorChainVerdict::new("thm-2.12", links, tol)?.with_case("expectation"))
                .with_regime("draws", lit(draws.max(1) as f64)))
        }
        TwoFunctionMode::Congruence => {
            if !(dg > T::zero()) {
                return Err(not_applicable("g(b) - g(a) must be positive for the ratio form"));
            }
            let b_mat = b_mat.ok_or_else(|| argument("congruence mode needs B"))?;
            let p = Pair::new(a_mat, b_mat)?;
            let (m, mm) = p.bounds();
            if !spectrum_within(m, mm, a, b) {
                return Err(not_applicable(format!("relative spectrum [{m}, {mm}] leaves [{a}, {b}]")));
            }
            let k = df / dg;
            let links = vec![p.cong.apply(fc)?, p.cong.apply(gc)?.scale(k)];
            Ok(base(OperatorChainVerdict::new("thm-2.12", links, tol)?.with_case("congruence"))
                .with_regime("m", m)
                .with_regime("M", mm)
                .with_regime("k", k))
        }
        TwoFunctionMode::Majorize => {
            if !(dg > T::zero()) {
                return Err(not_applicable("g(b) - g(a) must be positive for the ratio form"));
            }
            let b_mat = b_mat.ok_or_else(|| argument("majorize mode needs B"))?;
            let eb = b_mat.eigen()?;
            if !spectrum_within(ea.min(), ea.max(), a, b) || !spectrum_within(eb.min(), eb.max(), a, b) {
                return Err(not_applicable(format!("spectra leave [{a}, {b}]")));
            }
            if !loewner_compare(b_mat, a_mat, tol)?.holds {
                return Err(not_applicable("requires B <= A"));
            }
            let k = df / dg;
            let links = vec![eb.map(fc)?, ea.map(gc)?.scale(k)];
            Ok(base(OperatorChainVerdict::new("thm-2.12", links, tol)?.with_case("majorize")).with_regime("k", k))
        }
    }
}

/// Error classification used by the fuzz harness.
pub fn is_not_applicable(e: &Error) -> bool {
    matches!(e, Error::NotApplicable(_))
}
