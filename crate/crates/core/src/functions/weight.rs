//! The weight-function representation
//!
//! ```text
//! f(t) = (1+t)/2 · exp ∫₀¹ (λ²−1)(1−t)² / ((λ+t)(1+λt)(1+λ)²) · h(λ) dλ
//! ```
//!
//! and the lattice it induces: `f ⪯ g` iff `h_f ≥ h_g`, so the meet takes the
//! pointwise maximum of the weights and the join the pointwise minimum.

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use super::{MonotoneFunction, RawFn};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, Estimate};

/// Absolute error target for the exponent integral.
const QUAD_TARGET: f64 = 1e-10;
/// Estimated errors above this fail with [`Error::QuadratureFailure`].
const QUAD_FAIL: f64 = 1e-8;
const MAX_PANELS: usize = 4000;
/// Below this point the integrals are taken in `u = ln λ`.
const LOG_SPLIT: f64 = 1e-2;

type WeightFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A measurable map `h: [0, 1] → [0, 1]`, with the points where it jumps.
#[derive(Clone)]
pub struct Weight {
    name: String,
    eval: WeightFn,
    breakpoints: Vec<f64>,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("name", &self.name)
            .field("breakpoints", &self.breakpoints)
            .finish()
    }
}

impl Weight {
    /// `breakpoints` lists interior points of `(0, 1)` where `h` is not smooth.
    pub fn new(
        name: impl Into<String>,
        breakpoints: Vec<f64>,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        let mut breakpoints: Vec<f64> = breakpoints.into_iter().filter(|&b| b > 0.0 && b < 1.0).collect();
        breakpoints.sort_by(f64::total_cmp);
        breakpoints.dedup();
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            breakpoints,
        }
    }

    /// `h ≡ α`; represents `t^α ((1+t)/2)^{1-2α}`.
    pub fn constant(alpha: f64) -> Self {
        Self::new(format!("const({alpha})"), Vec::new(), move |_| alpha)
    }

    /// The arctan weight of the Wigner–Yanase–Dyson function `f_p`:
    /// `h_p(λ) = (1/π) arctan[(λ^p + λ^{1-p}) sin pπ / (1 − λ − (λ^p − λ^{1-p}) cos pπ)]`,
    /// taken on the branch in `[0, 1]`.
    pub fn wyd(p: f64) -> Self {
        let (s, c) = (p * PI).sin_cos();
        Self::new(format!("wyd({p})"), Vec::new(), move |lambda: f64| {
            if lambda <= 0.0 {
                return 0.0;
            }
            let a = lambda.powf(p);
            let b = lambda.powf(1.0 - p);
            let num = (a + b) * s;
            let den = 1.0 - lambda - (a - b) * c;
            num.atan2(den) / PI
        })
    }

    /// `h(λ) = p` for `λ ≥ 1 − p`, zero below.
    pub fn variant_bridge(p: f64) -> Self {
        let cut = 1.0 - p;
        Self::new(format!("step({p})"), alloc::vec![cut], move |lambda| {
            if lambda >= cut {
                p
            } else {
                0.0
            }
        })
    }

    pub fn pointwise_max(a: &Weight, b: &Weight) -> Self {
        let (fa, fb) = (a.eval.clone(), b.eval.clone());
        Self::new(
            format!("max({},{})", a.name, b.name),
            merged(&a.breakpoints, &b.breakpoints),
            move |l| fa(l).max(fb(l)),
        )
    }

    pub fn pointwise_min(a: &Weight, b: &Weight) -> Self {
        let (fa, fb) = (a.eval.clone(), b.eval.clone());
        Self::new(
            format!("min({},{})", a.name, b.name),
            merged(&a.breakpoints, &b.breakpoints),
            move |l| fa(l).min(fb(l)),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        (self.eval)(lambda)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Samples `h` on a linear grid, a logarithmic grid near zero and both
    /// sides of each breakpoint.
    fn check_range(&self) -> Result<()> {
        let linear = (0..=1000).map(|k| k as f64 / 1000.0);
        let log = (1..=300).map(|k| 10f64.powf(-(k as f64) / 10.0));
        let around = self
            .breakpoints
            .iter()
            .flat_map(|&b| [b * (1.0 - 1e-12), b, b * (1.0 + 1e-12)]);
        for lambda in linear.chain(log).chain(around) {
            let v = self.eval(lambda);
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::WeightOutOfRange { lambda, value: v });
            }
        }
        Ok(())
    }
}

fn merged(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    all
}

/// `∫_{cut}^{1} g(λ) dλ`, with `[cut, LOG_SPLIT]` integrated in `u = ln λ`
/// and the remaining range split at `breakpoints`.
fn integrate_unit(g: &impl Fn(f64) -> f64, breakpoints: &[f64], cut: f64) -> Estimate {
    let mut total = Estimate { value: 0.0, error: 0.0 };
    let split = LOG_SPLIT.max(cut);
    let mut log_points: Vec<f64> = Vec::new();
    log_points.push(cut.ln());
    log_points.extend(breakpoints.iter().filter(|&&b| b > cut && b < split).map(|b| b.ln()));
    log_points.push(split.ln());
    for w in log_points.windows(2) {
        total = total
            + integrate(
                |u: f64| {
                    let l = u.exp();
                    g(l) * l
                },
                w[0],
                w[1],
                QUAD_TARGET,
                MAX_PANELS,
            );
    }
    let mut points: Vec<f64> = Vec::new();
    points.push(split);
    points.extend(breakpoints.iter().filter(|&&b| b > split && b < 1.0).copied());
    points.push(1.0);
    for w in points.windows(2) {
        total = total + integrate(g, w[0], w[1], QUAD_TARGET, MAX_PANELS);
    }
    total
}

/// `∫₀¹ k(λ, t) h(λ) dλ` for `t > 0`.
fn exponent(h: &Weight, t: f64) -> Estimate {
    if t == 1.0 {
        return Estimate { value: 0.0, error: 0.0 };
    }
    let d2 = (1.0 - t) * (1.0 - t);
    let kernel = |l: f64| (l - 1.0) * d2 / ((l + t) * (1.0 + l * t) * (1.0 + l)) * h.eval(l);
    // |k| ≤ 1/(λ + t) on (0, cut) contributes at most cut/t.
    let cut = (t.min(1.0 / t) * 1e-14).max(1e-300);
    integrate_unit(&kernel, &h.breakpoints, cut)
}

/// Regularity test on `∫_ε^1 h(λ)/λ dλ`: the integral over successive
/// logarithmic windows `[1e-8, 1e-4]`, `[1e-16, 1e-8]`, `[1e-32, 1e-16]` is
/// averaged per decade; a weight whose per-decade mass does not decay (or
/// whose total passes 1e3) is declared non-regular. Weights vanishing near
/// zero slower than about `λ^0.025` are misread as non-regular.
fn looks_regular(h: &Weight) -> bool {
    let window =
        |lo: f64, hi: f64| integrate(|u: f64| h.eval(u.exp()), lo.ln(), hi.ln(), QUAD_TARGET, MAX_PANELS).value;
    let head = integrate_unit(&|l: f64| h.eval(l) / l, &h.breakpoints, 1e-4).value;
    let w1 = window(1e-8, 1e-4) / 4.0;
    let w2 = window(1e-16, 1e-8) / 8.0;
    let w3 = window(1e-32, 1e-16) / 16.0;
    let total = head + 4.0 * w1 + 8.0 * w2 + 16.0 * w3;
    let stalled = w3 > 1e-12 && w3 >= 0.5 * w2;
    !(total > 1e3 || stalled)
}

/// `f(0) = ½ exp(−∫₀¹ (1−λ)/(λ(1+λ)) h(λ) dλ)`, the `t → 0` limit of the
/// representation.
fn value_at_zero(h: &Weight) -> Estimate {
    let g = |l: f64| (1.0 - l) / (l * (1.0 + l)) * h.eval(l);
    let e = integrate_unit(&g, &h.breakpoints, 1e-300);
    Estimate {
        value: 0.5 * (-e.value).exp(),
        error: e.error,
    }
}

/// Builds the function represented by the weight `h`.
pub fn from_weight(h: &Weight) -> Result<MonotoneFunction> {
    build(h, None, format!("from_weight({})", h.name))
}

fn build(h: &Weight, regular: Option<bool>, name: String) -> Result<MonotoneFunction> {
    h.check_range()?;
    let regular = regular.unwrap_or_else(|| looks_regular(h));
    let f0 = if regular {
        let e = value_at_zero(h);
        if e.error > QUAD_FAIL {
            return Err(Error::QuadratureFailure { estimate: e.error });
        }
        e.value
    } else {
        0.0
    };
    for t in [1e-4, 1e-2, 0.1, 0.5, 0.9] {
        let e = exponent(h, t);
        if e.error > QUAD_FAIL || !e.value.is_finite() {
            return Err(Error::QuadratureFailure { estimate: e.error });
        }
    }
    let weight = h.clone();
    let raw: RawFn = Arc::new(move |t: f64| (1.0 + t) / 2.0 * exponent(&weight, t).value.exp());
    Ok(MonotoneFunction::from_parts(name, f0, raw, Some(h.clone())))
}

fn weight_of(f: &MonotoneFunction) -> Result<&Weight> {
    f.weight().ok_or_else(|| Error::MissingWeight(f.name().into()))
}

/// Greatest lower bound for `⪯`: weight `max{h_f, h_g}`. Regular iff both
/// arguments are.
pub fn lattice_meet(f: &MonotoneFunction, g: &MonotoneFunction) -> Result<MonotoneFunction> {
    let h = Weight::pointwise_max(weight_of(f)?, weight_of(g)?);
    build(
        &h,
        Some(f.is_regular() && g.is_regular()),
        format!("meet({},{})", f.name(), g.name()),
    )
}

/// Least upper bound for `⪯`: weight `min{h_f, h_g}`. Regular iff either
/// argument is.
pub fn lattice_join(f: &MonotoneFunction, g: &MonotoneFunction) -> Result<MonotoneFunction> {
    let h = Weight::pointwise_min(weight_of(f)?, weight_of(g)?);
    build(
        &h,
        Some(f.is_regular() || g.is_regular()),
        format!("join({},{})", f.name(), g.name()),
    )
}
