//! Normalized symmetric operator monotone functions.
//!
//! A [`MonotoneFunction`] `f: (0, ∞) → (0, ∞)` satisfies `f(1) = 1` and
//! `t f(1/t) = f(t)`. It carries its limit `f(0)` analytically; `f(0) > 0`
//! makes it *regular*, which is what skew information and the f-LQU need.

mod catalog;
mod order;
mod weight;

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

pub use catalog::{catalog, FunctionSpec};
pub use order::{majorizes, Majorization, ScalarProperty, Witness};
pub use weight::{from_weight, lattice_join, lattice_meet, Weight};

pub(crate) type RawFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Grid used for invariant checks: `t = 10^(k/10)` for `k = -40..=40`.
pub fn log_grid() -> impl Iterator<Item = f64> {
    (-40..=40).map(|k| 10f64.powf(k as f64 / 10.0))
}

/// An element of the class of normalized symmetric operator monotone functions.
#[derive(Clone)]
pub struct MonotoneFunction {
    name: String,
    raw: RawFn,
    f_at_zero: f64,
    weight: Option<Weight>,
}

impl fmt::Debug for MonotoneFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonotoneFunction")
            .field("name", &self.name)
            .field("f_at_zero", &self.f_at_zero)
            .field("weight", &self.weight.as_ref().map(Weight::name))
            .finish()
    }
}

impl MonotoneFunction {
    /// A user-defined function. `eval` must be defined on all of `(0, ∞)`;
    /// `f_at_zero` is the declared limit at zero and is not computed.
    ///
    /// The function is checked for normalization, symmetry and monotonicity
    /// on [`log_grid`]. Operator monotonicity is not checked.
    pub fn new(
        name: impl Into<String>,
        f_at_zero: f64,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let f = Self::from_parts(name.into(), f_at_zero, Arc::new(eval), None);
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_parts(name: String, f_at_zero: f64, raw: RawFn, weight: Option<Weight>) -> Self {
        Self {
            name,
            raw,
            f_at_zero,
            weight,
        }
    }

    /// Attaches a weight function for the lattice operations. The weight is
    /// trusted to represent this function.
    pub fn with_weight(mut self, weight: Weight) -> Self {
        self.weight = Some(weight);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn f_at_zero(&self) -> f64 {
        self.f_at_zero
    }

    pub fn is_regular(&self) -> bool {
        self.f_at_zero > 0.0
    }

    pub fn weight(&self) -> Option<&Weight> {
        self.weight.as_ref()
    }

    pub(crate) fn require_regular(&self) -> Result<()> {
        if self.is_regular() {
            Ok(())
        } else {
            Err(Error::NotRegular(self.name.clone()))
        }
    }

    /// `f(t)` for `t ≥ 0`. Arguments above one are folded through
    /// `f(t) = t f(1/t)` so the underlying formula only sees `(0, 1]`.
    pub fn eval(&self, t: f64) -> f64 {
        if t == 0.0 {
            self.f_at_zero
        } else if t > 1.0 {
            t * (self.raw)(1.0 / t)
        } else if t > 0.0 {
            (self.raw)(t)
        } else {
            f64::NAN
        }
    }

    /// The formula without folding; used to check symmetry.
    pub(crate) fn eval_unfolded(&self, t: f64) -> f64 {
        (self.raw)(t)
    }

    /// Scalar Kubo–Ando mean `m_f(x, y) = y f(x/y)` with the continuous
    /// extension `m_f(0, y) = f(0) y` on the boundary.
    pub fn mean(&self, x: f64, y: f64) -> f64 {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        if hi == 0.0 {
            0.0
        } else if lo == 0.0 {
            self.f_at_zero * hi
        } else {
            hi * self.eval(lo / hi)
        }
    }

    /// Checks `f(1) = 1`, `t f(1/t) = f(t)`, positivity and monotonicity on
    /// [`log_grid`], and that the declared `f(0)` lies below the sampled values.
    pub fn validate(&self) -> Result<()> {
        let invalid = |property, t| Error::InvalidFunction {
            name: self.name.clone(),
            property,
            t,
        };
        if !(self.f_at_zero >= 0.0) {
            return Err(invalid("f(0) >= 0", 0.0));
        }
        if (self.eval_unfolded(1.0) - 1.0).abs() > 1e-12 {
            return Err(invalid("normalization f(1) = 1", 1.0));
        }
        let mut prev = self.f_at_zero;
        for t in log_grid() {
            let ft = self.eval_unfolded(t);
            if !(ft.is_finite() && ft > 0.0) {
                return Err(invalid("positivity", t));
            }
            let mirrored = t * self.eval_unfolded(1.0 / t);
            if (mirrored - ft).abs() > 1e-10 * ft.max(1.0) {
                return Err(invalid("symmetry t f(1/t) = f(t)", t));
            }
            if ft < prev * (1.0 - 1e-12) {
                return Err(invalid("monotonicity", t));
            }
            prev = ft;
        }
        Ok(())
    }
}

/// `f̃(x) = ½[(x + 1) − (x − 1)² f(0)/f(x)]`, the non-regular partner of a
/// regular `f`.
pub fn f_tilde(f: &MonotoneFunction) -> Result<MonotoneFunction> {
    f.require_regular()?;
    let inner = f.clone();
    let f0 = f.f_at_zero;
    let raw: RawFn = Arc::new(move |x: f64| {
        let d = x - 1.0;
        0.5 * ((x + 1.0) - d * d * f0 / inner.eval(x))
    });
    Ok(MonotoneFunction::from_parts(
        format!("tilde({})", f.name),
        0.0,
        raw,
        None,
    ))
}

/// `f̌(t) = f(0)/f(t)`.
#[derive(Clone, Debug)]
pub struct CheckFunction {
    f: MonotoneFunction,
}

impl CheckFunction {
    pub fn eval(&self, t: f64) -> f64 {
        self.f.f_at_zero / self.f.eval(t)
    }

    pub fn source(&self) -> &MonotoneFunction {
        &self.f
    }
}

pub fn f_check(f: &MonotoneFunction) -> Result<CheckFunction> {
    f.require_regular()?;
    Ok(CheckFunction { f: f.clone() })
}

/// Gap below which two coordinates of a spectrum count as equal.
pub const DEGENERACY_GAP: f64 = 1e-9;

/// The fixed spectrum `Λ` of the local observables in the f-LQU.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumLambda {
    values: Vec<f64>,
}

impl SpectrumLambda {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::ParameterOutOfRange {
                name: "spectrum",
                value: *bad,
            });
        }
        Ok(Self { values })
    }

    /// `(1, 2, …, d)`.
    pub fn ladder(d: usize) -> Self {
        Self {
            values: (1..=d).map(|k| k as f64).collect(),
        }
    }

    /// `(1, 2, …, d)` shifted to zero mean.
    pub fn centered_ladder(d: usize) -> Self {
        let shift = (d as f64 + 1.0) / 2.0;
        Self {
            values: (1..=d).map(|k| k as f64 - shift).collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// All pairwise gaps exceed [`DEGENERACY_GAP`].
    pub fn is_nondegenerate(&self) -> bool {
        let v = &self.values;
        (0..v.len()).all(|i| (i + 1..v.len()).all(|j| (v[i] - v[j]).abs() > DEGENERACY_GAP))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> MonotoneFunction {
        catalog(s).unwrap()
    }

    const GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

    #[test]
    fn tilde_of_sld_is_harmonic() {
        let ft = f_tilde(&spec("sld")).unwrap();
        for t in GRID {
            assert!((ft.eval(t) - 2.0 * t / (t + 1.0)).abs() < 1e-12);
        }
        assert_eq!(ft.f_at_zero(), 0.0);
        assert!(!ft.is_regular());
    }

    #[test]
    fn tilde_of_wy_is_geometric() {
        let ft = f_tilde(&spec("wy")).unwrap();
        for t in GRID {
            assert!((ft.eval(t) - t.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn tilde_of_wyd() {
        for beta in [0.25, 0.5, 0.8] {
            let ft = f_tilde(&FunctionSpec::Wyd(beta).build().unwrap()).unwrap();
            for t in GRID {
                let expected = (t.powf(beta) + t.powf(1.0 - beta)) / 2.0;
                assert!((ft.eval(t) - expected).abs() < 1e-12, "beta {beta} t {t}");
            }
        }
    }

    #[test]
    fn tilde_is_normalized_and_vanishes_at_zero() {
        for name in ["sld", "wy", "wyd:0.3", "variant_bridge:0.5", "bridge:0"] {
            let ft = f_tilde(&spec(name)).unwrap();
            assert!((ft.eval(1.0) - 1.0).abs() < 1e-15, "{name}");
            let probes: Vec<f64> = [1e-2, 1e-4, 1e-6].iter().map(|&t| ft.eval(t)).collect();
            assert!(probes.windows(2).all(|w| w[1] < w[0]), "{name}: {probes:?}");
            assert!(probes[2] < 1e-2);
            ft.validate().unwrap();
        }
    }

    #[test]
    fn tilde_requires_regular() {
        assert!(matches!(f_tilde(&spec("kubo_mori")), Err(Error::NotRegular(_))));
        assert!(matches!(f_check(&spec("harmonic")), Err(Error::NotRegular(_))));
    }

    #[test]
    fn tilde_is_deterministic_and_injective_on_catalog() {
        let names = [
            "sld",
            "wy",
            "wyd:0.3",
            "wyd:0.1",
            "variant_bridge:0.5",
            "variant_bridge:0.2",
        ];
        let probe = [0.05, 0.3, 3.0, 20.0];
        let tildes: Vec<Vec<f64>> = names
            .iter()
            .map(|n| {
                let f = spec(n);
                let a = f_tilde(&f).unwrap();
                let b = f_tilde(&f).unwrap();
                probe
                    .iter()
                    .map(|&t| {
                        assert_eq!(a.eval(t).to_bits(), b.eval(t).to_bits());
                        a.eval(t)
                    })
                    .collect()
            })
            .collect();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                let gap = tildes[i]
                    .iter()
                    .zip(&tildes[j])
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(gap > 1e-6, "{} vs {}", names[i], names[j]);
            }
        }
    }

    #[test]
    fn check_function() {
        let sld = spec("sld");
        let chk = f_check(&sld).unwrap();
        for t in GRID {
            assert!((chk.eval(t) - 1.0 / (1.0 + t)).abs() < 1e-15);
        }
        assert_eq!(chk.eval(1.0), 0.5);
        let wy = f_check(&spec("wy")).unwrap();
        assert!((wy.eval(1e-14) - 1.0).abs() < 1e-6);
        assert_eq!(wy.eval(0.0), 1.0);
        for name in ["wy", "wyd:0.3", "variant_bridge:0.4"] {
            let f = spec(name);
            let chk = f_check(&f).unwrap();
            let mut prev = f64::INFINITY;
            for t in log_grid() {
                assert!((chk.eval(t) * f.eval(t) - f.f_at_zero()).abs() < 1e-15);
                assert!(chk.eval(t) <= prev);
                prev = chk.eval(t);
            }
        }
    }

    #[test]
    fn user_defined_function_validation() {
        let ok = MonotoneFunction::new("arith", 0.5, |t| (1.0 + t) / 2.0).unwrap();
        assert!(ok.is_regular());
        let not_sym = MonotoneFunction::new("identity", 0.0, |t| t);
        assert!(matches!(
            not_sym,
            Err(Error::InvalidFunction {
                property: "symmetry t f(1/t) = f(t)",
                ..
            })
        ));
        let not_normalized = MonotoneFunction::new("double", 1.0, |t| 1.0 + t);
        assert!(matches!(
            not_normalized,
            Err(Error::InvalidFunction {
                property: "normalization f(1) = 1",
                ..
            })
        ));
    }

    #[test]
    fn mean_extension_at_zero() {
        let wy = spec("wy");
        assert_eq!(wy.mean(0.0, 2.0), 0.5);
        assert_eq!(wy.mean(3.0, 0.0), 0.75);
        assert_eq!(wy.mean(0.0, 0.0), 0.0);
        assert!((wy.mean(4.0, 1.0) - 2.25).abs() < 1e-15);
        assert_eq!(wy.mean(0.7, 0.7), 0.7);
    }

    #[test]
    fn spectrum_lambda() {
        assert!(SpectrumLambda::ladder(3).is_nondegenerate());
        assert_eq!(SpectrumLambda::centered_ladder(3).values(), &[-1.0, 0.0, 1.0]);
        assert!(!SpectrumLambda::new(alloc::vec![1.0, 1.0 + 1e-10])
            .unwrap()
            .is_nondegenerate());
        assert!(SpectrumLambda::new(alloc::vec![f64::NAN]).is_err());
    }
}
