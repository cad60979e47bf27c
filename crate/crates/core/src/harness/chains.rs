//! Registered chains: each pairs a generator of admissible instances with an
//! evaluator that runs the corresponding check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generate::{
    draw_dim, gaussian_vector, gen_pd_of_dim, log_uniform, pair_of_dim, simplex_weights, uniform, unit_open_closed,
    with_spectrum,
};
use super::{GeneratorConfig, Outcome, Witness};
use crate::catalog::{self, JensenKind, LogMode};
use crate::entropy::{self, TwoFunctionMode};
use crate::error::{argument, Result};
use crate::function::{Flags, FunctionSpec};
use crate::linalg::SymmetricMatrix;

type Generate = fn(&mut ChaCha8Rng, &GeneratorConfig) -> Result<Witness>;
type Evaluate = fn(&Witness, f64) -> Result<Outcome>;

/// A fuzzable chain.
pub struct ChainDef {
    pub id: &'static str,
    /// Short statement of what the chain asserts.
    pub anchor: &'static str,
    pub operator: bool,
    pub generate: Generate,
    pub evaluate: Evaluate,
}

impl std::fmt::Debug for ChainDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ChainDef").field("id", &self.id).finish()
    }
}

macro_rules! def {
    ($id:literal, $anchor:literal, $op:literal, $gen:ident, $eval:ident) => {
        ChainDef { id: $id, anchor: $anchor, operator: $op, generate: $gen, evaluate: $eval }
    };
}

static CHAINS: &[ChainDef] = &[
    def!(
        "prop-2.1",
        "exponential bounds on the weighted arithmetic/geometric mean ratio",
        false,
        gen_prop21,
        eval_prop21
    ),
    def!("rem-2.2", "monotonicity of n(x^{1/n}-1) and n(1-x^{-1/n}) in n for x >= 1", false, gen_rem22, eval_rem22),
    def!("thm-2.2", "min/max bounds on |f(t)-f(s)| via squared increments", false, gen_thm22, eval_thm22),
    def!("rem-2.3-iii", "power-generalized min/max increment bounds for increasing f", false, gen_rem23, eval_rem23),
    def!("cor-2.4", "Jensen refinement with the additive psi(t)/t term", false, gen_cor24, eval_cor24),
    def!("rem-2.5", "arithmetic-geometric mean refinement from the Jensen refinement", false, gen_rem25, eval_rem25),
    def!(
        "thm-2.6-convex",
        "log-derivative exponential bounds for log-convex f",
        false,
        gen_thm26_convex,
        eval_thm26_convex
    ),
    def!(
        "thm-2.6-concave",
        "log-derivative exponential bounds for log-concave f",
        false,
        gen_thm26_concave,
        eval_thm26_concave
    ),
    def!("thm-2.7", "power bounds on f(t)/f(s) for geometrically convex f", false, gen_thm27, eval_thm27),
    def!("cor-2.8", "exponential bounds on the geometric interpolation ratio", false, gen_cor28, eval_cor28),
    def!("cor-2.9-i", "exponential Jensen bounds for log-convex f", false, gen_cor29_i, eval_cor29_i),
    def!("cor-2.9-ii", "power Jensen bounds for geometrically convex f", false, gen_cor29_ii, eval_cor29_ii),
    def!("rem-2.10", "geometric convexity chain for decreasing geometrically convex f", false, gen_rem210, eval_rem210),
    def!("lem-3.2", "log x + theta(t,x)/t <= ln_t x", false, gen_lem32, eval_lem32),
    def!("lem-3.4", "eta-exponential relation between ln_s x and ln_t x", false, gen_lem34, eval_lem34),
    def!("lem-3.7", "log-convexity of the arithmetic and geometric normalizations", false, gen_lem37, eval_lem37),
    def!("cor-3.8", "refined and reversed Young inequality with phi", false, gen_cor38, eval_cor38),
    def!("lem-2.11", "<f(A)h,h> <= f(<Ah,h>) for concave f", true, gen_lem211, eval_lem211),
    def!(
        "thm-2.12",
        "two-function operator inequality in expectation, congruence and majorize form",
        true,
        gen_thm212,
        eval_thm212
    ),
    def!("zou", "A - AB^{-1}A <= T_{-t} <= S <= T_t <= B - A", true, gen_zou, eval_zou),
    def!("thm-3.3", "S + (theta/t) A <= T_t in three spectral cases", true, gen_thm33, eval_thm33),
    def!("thm-3.5", "eta-exponential relation between T_s and T_t for m >= 1", true, gen_thm35, eval_thm35),
    def!("thm-3.6", "constant multiples of A bounding S for spectra in (0,1/e] or [1,e]", true, gen_thm36, eval_thm36),
    def!("thm-3.11", "chord bound for T_t from the concavity or convexity of ln_t", true, gen_thm311, eval_thm311),
    def!("prop-3.10", "S <= T_p <= S_p for p > 0, reversed for p < 0", true, gen_prop310, eval_prop310),
];

pub fn chains() -> &'static [ChainDef] {
    CHAINS
}

pub fn chain(id: &str) -> Option<&'static ChainDef> {
    CHAINS.iter().find(|c| c.id == id)
}

const FAMILIES: usize = 18;

/// Member of a function family with randomized parameters.
fn family(rng: &mut ChaCha8Rng, k: usize) -> FunctionSpec<f64> {
    match k {
        0 => FunctionSpec::identity(),
        1 => FunctionSpec::power(uniform(rng, 1.0, 4.0)),
        2 => FunctionSpec::sqrt(),
        3 => FunctionSpec::exp(),
        4 => FunctionSpec::exp_power(uniform(rng, 1.0, 3.0)),
        5 => FunctionSpec::inverse_power(uniform(rng, 0.2, 4.0)),
        6 => FunctionSpec::inv_sin(),
        7 => FunctionSpec::neg_log(),
        8 => {
            let lo = uniform(rng, 0.05, 1.0);
            FunctionSpec::neg_log_on(lo, lo * uniform(rng, 2.0, 50.0))
        }
        9 => FunctionSpec::log(),
        10 => FunctionSpec::log1p(),
        11 => FunctionSpec::deformed_log_in_t(log_uniform(rng, 1.1, 10.0)),
        12 => FunctionSpec::geometric_path(log_uniform(rng, 0.1, 10.0), log_uniform(rng, 0.1, 10.0)),
        13 => FunctionSpec::shifted_log(uniform(rng, 0.0, 3.0)),
        14 => {
            let lo = log_uniform(rng, 0.1, 2.0);
            FunctionSpec::shifted_sqrt(uniform(rng, 0.0, 3.0), lo, lo * uniform(rng, 1.5, 20.0))
        }
        15 => {
            let lo = uniform(rng, -2.0, 1.0);
            FunctionSpec::quadratic(
                uniform(rng, 0.0, 3.0),
                uniform(rng, 0.0, 2.0),
                uniform(rng, -1.0, 3.0),
                lo,
                lo + uniform(rng, 0.5, 4.0),
            )
        }
        16 => {
            let lo = uniform(rng, -2.0, 1.0);
            FunctionSpec::affine(
                uniform(rng, -2.0, 2.0),
                uniform(rng, -1.0, 1.0),
                uniform(rng, -1.0, 1.0),
                lo,
                lo + uniform(rng, 0.5, 4.0),
            )
        }
        _ => {
            let lo = log_uniform(rng, 0.1, 2.0);
            FunctionSpec::deformed_log_in_x(uniform(rng, -2.0, 3.0), lo, lo * uniform(rng, 1.5, 20.0))
        }
    }
}

fn pick_function(rng: &mut ChaCha8Rng, accept: impl Fn(&FunctionSpec<f64>) -> bool) -> FunctionSpec<f64> {
    loop {
        let k = rng.random_range(0..FAMILIES);
        let f = family(rng, k);
        if accept(&f) {
            return f;
        }
    }
}

fn with_flags(pred: impl Fn(Flags) -> bool) -> impl Fn(&FunctionSpec<f64>) -> bool {
    move |f| pred(f.flags())
}

/// Point of the domain at least a thousandth of its width from either end.
fn sample_in(rng: &mut ChaCha8Rng, f: &FunctionSpec<f64>) -> f64 {
    let d = f.domain();
    let pad = 1e-3 * d.width();
    uniform(rng, d.lo + pad, d.hi - pad)
}

/// As [`sample_in`], restricted to the positive part of the domain.
fn sample_positive(rng: &mut ChaCha8Rng, f: &FunctionSpec<f64>) -> f64 {
    let d = f.domain();
    let lo = if d.lo > 0.0 { d.lo } else { 0.0 };
    let pad = 1e-3 * (d.hi - lo);
    uniform(rng, lo + pad, d.hi - pad)
}

fn ordered_pair(rng: &mut ChaCha8Rng, f: &FunctionSpec<f64>, positive: bool) -> (f64, f64) {
    let min_gap = 1e-6 * f.domain().width();
    loop {
        let (x, y) = if positive {
            (sample_positive(rng, f), sample_positive(rng, f))
        } else {
            (sample_in(rng, f), sample_in(rng, f))
        };
        if (x - y).abs() >= min_gap {
            return (x.min(y), x.max(y));
        }
    }
}

fn gen_prop21(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    Ok(Witness::default()
        .param("a", log_uniform(rng, 1e-3, 1e3))
        .param("b", log_uniform(rng, 1e-3, 1e3))
        .param("v", rng.random::<f64>())
        .param("n", rng.random_range(1..=64u32) as f64))
}

fn eval_prop21(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::young_ratio_chain(w.get("a")?, w.get("b")?, w.get("v")?, count(w.get("n")?)?)?.with_tol(tol).into())
}

fn count(n: f64) -> Result<u64> {
    if n >= 1.0 && n.fract() == 0.0 && n < 9.0e15 {
        Ok(n as u64)
    } else {
        Err(argument(format!("n must be a positive integer, got {n}")))
    }
}

fn gen_rem22(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    Ok(Witness::default().param("x", log_uniform(rng, 1.0, 1e3)).param("n", rng.random_range(1..=63u32) as f64))
}

fn eval_rem22(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::sequence_monotonicity_chain(w.get("x")?, count(w.get("n")?)?)?.with_tol(tol).into())
}

fn gen_thm22(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, |_| true);
    let (s, t) = ordered_pair(rng, &f, false);
    Ok(Witness::default().function("f", &f).param("s", s).param("t", t))
}

fn eval_thm22(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::check_minmax_square(&w.get_function("f")?, w.get("s")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_rem23(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, |f| f.flags().monotone_increasing && !f.flags().monotone_decreasing);
    let (s, t) = ordered_pair(rng, &f, false);
    let (p, q) = if rng.random::<f64>() < 0.2 { (2.0, 0.0) } else { (uniform(rng, 1.0, 4.0), uniform(rng, -2.0, 1.0)) };
    Ok(Witness::default().function("f", &f).param("s", s).param("t", t).param("p", p).param("q", q))
}

fn eval_rem23(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    Ok(catalog::check_minmax_power(&f, w.get("s")?, w.get("t")?, w.get("p")?, w.get("q")?)?.with_tol(tol).into())
}

fn weighted_points(rng: &mut ChaCha8Rng, f: &FunctionSpec<f64>, positive: bool) -> (Vec<f64>, Vec<f64>) {
    let k = rng.random_range(1..=6usize);
    let w = simplex_weights(rng, k);
    let x = (0..k).map(|_| if positive { sample_positive(rng, f) } else { sample_in(rng, f) }).collect();
    (w, x)
}

fn gen_cor24(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.convex));
    let (w, x) = weighted_points(rng, &f, false);
    Ok(Witness::default().function("f", &f).vector("w", w).vector("x", x).param("t", unit_open_closed(rng)))
}

fn eval_cor24(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    Ok(catalog::jensen_refinement(&f, w.get_vector("w")?, w.get_vector("x")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_rem25(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let k = rng.random_range(1..=6usize);
    let w = simplex_weights(rng, k);
    let x = (0..k).map(|_| log_uniform(rng, 1.0, 100.0)).collect();
    Ok(Witness::default().vector("w", w).vector("x", x).param("t", unit_open_closed(rng)))
}

fn eval_rem25(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::amgm_refinement(w.get_vector("w")?, w.get_vector("x")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_two_points(rng: &mut ChaCha8Rng, f: FunctionSpec<f64>, positive: bool) -> Witness {
    let (x, y) = if positive {
        (sample_positive(rng, &f), sample_positive(rng, &f))
    } else {
        (sample_in(rng, &f), sample_in(rng, &f))
    };
    Witness::default().function("f", &f).param("s", x).param("t", y)
}

fn gen_thm26_convex(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.log_convex));
    Ok(gen_two_points(rng, f, false))
}

fn eval_thm26_convex(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::logconvex_chain(&w.get_function("f")?, w.get("s")?, w.get("t")?, LogMode::Convex)?.with_tol(tol).into())
}

fn gen_thm26_concave(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.log_concave));
    Ok(gen_two_points(rng, f, false))
}

fn eval_thm26_concave(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::logconvex_chain(&w.get_function("f")?, w.get("s")?, w.get("t")?, LogMode::Concave)?
        .with_tol(tol)
        .into())
}

fn gen_thm27(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.geometrically_convex));
    Ok(gen_two_points(rng, f, true))
}

fn eval_thm27(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::geomconvex_chain(&w.get_function("f")?, w.get("s")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_cor28(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let g = pick_function(rng, |f| {
        let fl = f.flags();
        (fl.geometrically_convex || (fl.log_convex && fl.monotone_increasing)) && f.domain().hi > 0.0
    });
    Ok(Witness::default()
        .function("g", &g)
        .param("a", sample_positive(rng, &g))
        .param("b", sample_positive(rng, &g))
        .param("t", rng.random::<f64>()))
}

fn eval_cor28(w: &Witness, tol: f64) -> Result<Outcome> {
    let g = w.get_function("g")?;
    Ok(catalog::geom_interpolation_chain(&g, w.get("a")?, w.get("b")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_cor29_i(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.log_convex));
    let (w, x) = weighted_points(rng, &f, false);
    Ok(Witness::default().function("f", &f).vector("w", w).vector("x", x))
}

fn eval_cor29_i(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    Ok(catalog::jensen_exponential_bounds(&f, w.get_vector("w")?, w.get_vector("x")?, JensenKind::LogConvex)?
        .with_tol(tol)
        .into())
}

fn gen_cor29_ii(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.geometrically_convex));
    let (w, x) = weighted_points(rng, &f, true);
    Ok(Witness::default().function("f", &f).vector("w", w).vector("x", x))
}

fn eval_cor29_ii(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    Ok(catalog::jensen_exponential_bounds(&f, w.get_vector("w")?, w.get_vector("x")?, JensenKind::GeometricallyConvex)?
        .with_tol(tol)
        .into())
}

fn gen_rem210(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, with_flags(|fl| fl.monotone_decreasing && fl.geometrically_convex));
    Ok(Witness::default()
        .function("f", &f)
        .param("x", sample_positive(rng, &f))
        .param("y", sample_positive(rng, &f))
        .param("t", rng.random::<f64>()))
}

fn eval_rem210(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    Ok(catalog::geometric_to_convex_chain(&f, w.get("x")?, w.get("y")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_lem32(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    Ok(Witness::default().param("t", unit_open_closed(rng)).param("x", log_uniform(rng, 1e-3, 1e3)))
}

fn eval_lem32(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::deformed_log_refinement(w.get("t")?, w.get("x")?)?.with_tol(tol).into())
}

fn gen_lem34(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    Ok(Witness::default()
        .param("x", log_uniform(rng, 1.0, 100.0))
        .param("s", 3.0 * unit_open_closed(rng))
        .param("t", 3.0 * unit_open_closed(rng)))
}

fn eval_lem34(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::tsallis_scalar_chain(w.get("x")?, w.get("s")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_lem37(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, |f| f.flags().log_convex && f.domain().contains_interval(0.0, 1.0));
    Ok(Witness::default().function("f", &f).param("u", rng.random::<f64>()).param("w", rng.random::<f64>()))
}

fn eval_lem37(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::derived_logconvexity_check(&w.get_function("f")?, w.get("u")?, w.get("w")?)?.with_tol(tol).into())
}

fn gen_cor38(rng: &mut ChaCha8Rng, _: &GeneratorConfig) -> Result<Witness> {
    Ok(Witness::default()
        .param("a", log_uniform(rng, 1e-3, 1e3))
        .param("b", log_uniform(rng, 1e-3, 1e3))
        .param("t", rng.random::<f64>()))
}

fn eval_cor38(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(catalog::young_refinement_chain(w.get("a")?, w.get("b")?, w.get("t")?)?.with_tol(tol).into())
}

fn gen_lem211(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let f = pick_function(rng, |f| f.flags().concave);
    let n = draw_dim(rng, cfg);
    let spectrum: Vec<f64> = (0..n).map(|_| sample_in(rng, &f)).collect();
    let a = with_spectrum(rng, &spectrum);
    Ok(Witness::default().function("f", &f).matrix("A", &a).vector("h", gaussian_vector(rng, n)))
}

fn eval_lem211(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    let a = w.get_matrix("A")?;
    let h = w.get_vector("h")?;
    if h.len() != a.n() {
        return Err(argument("h and A have different dimensions"));
    }
    Ok(entropy::jensen_operator_check(&f, &a, h)?.with_tol(tol).into())
}

/// Pairs satisfying the two-function hypotheses on their whole domain.
fn two_function_pair(k: usize) -> (FunctionSpec<f64>, FunctionSpec<f64>) {
    if k == 0 {
        (FunctionSpec::shifted_sqrt(2.0, 1.0, 4.0), FunctionSpec::quadratic(1.0, 0.01, 1.0, 1.0, 4.0))
    } else {
        (FunctionSpec::shifted_log(3.0), FunctionSpec::quadratic(1.0, 0.05, 1.0, 1.0, std::f64::consts::E))
    }
}

/// Expectation draws per instance.
pub const EXPECTATION_DRAWS: usize = 1000;

fn gen_thm212(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let pair = rng.random_range(0..2usize);
    let (f, g) = two_function_pair(pair);
    let (a, b) = (f.domain().lo, f.domain().hi);
    let mode = rng.random_range(0..3usize);
    let n = draw_dim(rng, cfg);
    let w =
        Witness::default().function("f", &f).function("g", &g).param("a", a).param("b", b).param("mode", mode as f64);
    Ok(match mode {
        0 => {
            let spectrum: Vec<f64> = (0..n).map(|_| uniform(rng, a, b)).collect();
            w.matrix("A", &with_spectrum(rng, &spectrum)).param("h_seed", rng.random::<u32>() as f64)
        }
        1 => {
            let (x, y) = (uniform(rng, a, b), uniform(rng, a, b));
            let (am, bm) = pair_of_dim(rng, cfg, n, x.min(y), x.max(y))?;
            w.matrix("A", &am).matrix("B", &bm)
        }
        _ => {
            let spectrum: Vec<f64> = (0..n).map(|_| uniform(rng, a, b)).collect();
            let am = with_spectrum(rng, &spectrum);
            let shifted = am.sub(&SymmetricMatrix::identity(n).scale(a))?;
            let root = shifted.eigen()?.map(|x| Ok(x.max(0.0).sqrt()))?;
            let c_spec: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
            let c = with_spectrum(rng, &c_spec);
            let bm = SymmetricMatrix::identity(n).scale(a).add(&root.congruence(&c)?)?;
            w.matrix("A", &am).matrix("B", &bm)
        }
    })
}

fn eval_thm212(w: &Witness, tol: f64) -> Result<Outcome> {
    let f = w.get_function("f")?;
    let g = w.get_function("g")?;
    let interval = (w.get("a")?, w.get("b")?);
    let a = w.get_matrix("A")?;
    let (mode, b) = match w.get("mode")? as usize {
        0 => (TwoFunctionMode::Expectation { draws: EXPECTATION_DRAWS }, None),
        1 => (TwoFunctionMode::Congruence, Some(w.get_matrix("B")?)),
        _ => (TwoFunctionMode::Majorize, Some(w.get_matrix("B")?)),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(w.params.get("h_seed").copied().unwrap_or(0.0) as u64);
    Ok(entropy::check_two_function_operator(&f, &g, interval, &a, b.as_ref(), mode, &mut rng, tol)?.into())
}

fn gen_zou(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let n = draw_dim(rng, cfg);
    let a = gen_pd_of_dim(rng, cfg, n);
    let b = gen_pd_of_dim(rng, cfg, n);
    Ok(Witness::default().matrix("A", &a).matrix("B", &b).param("t", unit_open_closed(rng)))
}

fn eval_zou(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_zou_chain(&w.get_matrix("A")?, &w.get_matrix("B")?, w.get("t")?, tol)?.into())
}

/// Constrained pair with the regime recorded in the witness.
fn constrained(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig, m: f64, big_m: f64) -> Result<Witness> {
    let n = draw_dim(rng, cfg);
    let (a, b) = pair_of_dim(rng, cfg, n, m, big_m)?;
    Ok(Witness::default().matrix("A", &a).matrix("B", &b).param("m", m).param("M", big_m))
}

fn gen_thm33(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let case = rng.random_range(0..3usize);
    let (m, big_m) = match case {
        0 => {
            let m = log_uniform(rng, 0.05, 0.5);
            (m, uniform(rng, m, 0.95))
        }
        1 => (uniform(rng, 0.2, 1.0), uniform(rng, 1.0, 5.0)),
        _ => {
            let m = uniform(rng, 1.05, 3.0);
            (m, uniform(rng, m, 6.0))
        }
    };
    Ok(constrained(rng, cfg, m, big_m)?.param("case", case as f64).param("t", unit_open_closed(rng)))
}

fn eval_thm33(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_refined_ST(&w.get_matrix("A")?, &w.get_matrix("B")?, w.get("t")?, tol)?.into())
}

fn gen_thm35(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let m = uniform(rng, 1.0, 3.0);
    let big_m = m * uniform(rng, 1.0, 3.0);
    Ok(constrained(rng, cfg, m, big_m)?.param("s", 3.0 * unit_open_closed(rng)).param("t", 3.0 * unit_open_closed(rng)))
}

fn eval_thm35(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_tsallis_relation(&w.get_matrix("A")?, &w.get_matrix("B")?, w.get("s")?, w.get("t")?, tol)?.into())
}

fn gen_thm36(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let case = rng.random_range(0..2usize);
    let e = std::f64::consts::E;
    let (m, big_m) = if case == 0 {
        let m = uniform(rng, 0.02, 1.0 / e);
        (m, uniform(rng, m, 1.0 / e))
    } else {
        let m = uniform(rng, 1.0, e);
        (m, uniform(rng, m, e))
    };
    Ok(constrained(rng, cfg, m, big_m)?.param("case", case as f64))
}

fn eval_thm36(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_roe_bounds(&w.get_matrix("A")?, &w.get_matrix("B")?, tol)?.into())
}

fn gen_thm311(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let case = rng.random_range(0..2usize);
    let t = if case == 0 { uniform(rng, -2.0, 1.0) } else { uniform(rng, 1.0, 3.0) };
    let m = if rng.random::<bool>() { 1.0 } else { uniform(rng, 1.0, 3.0) };
    let big_m = m + uniform(rng, 0.1, 4.0);
    Ok(constrained(rng, cfg, m, big_m)?.param("case", case as f64).param("t", t))
}

fn eval_thm311(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_troe_linear_bound(&w.get_matrix("A")?, &w.get_matrix("B")?, w.get("t")?, tol)?.into())
}

fn gen_prop310(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Result<Witness> {
    let case = rng.random_range(0..2usize);
    let p = uniform(rng, 0.05, 3.0) * if case == 0 { 1.0 } else { -1.0 };
    let n = draw_dim(rng, cfg);
    let a = gen_pd_of_dim(rng, cfg, n);
    let b = gen_pd_of_dim(rng, cfg, n);
    Ok(Witness::default().matrix("A", &a).matrix("B", &b).param("p", p).param("case", case as f64))
}

fn eval_prop310(w: &Witness, tol: f64) -> Result<Outcome> {
    Ok(entropy::check_ordering_S_Tp_Sp(&w.get_matrix("A")?, &w.get_matrix("B")?, w.get("p")?, tol)?.into())
}
