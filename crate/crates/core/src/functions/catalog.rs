//! Built-in functions with closed forms and analytic `f(0)`.

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use core::fmt;
use core::str::FromStr;
#[allow(unused_imports)]
use num_traits::Float;

use super::{MonotoneFunction, RawFn, Weight};
use crate::error::{Error, Result};

/// Below this distance from `t = 1` the removable singularities are
/// evaluated by series.
const SERIES_RADIUS: f64 = 1e-4;

/// Catalog entries. `Wyd(p)` is the Wigner–Yanase–Dyson function `f_p`,
/// `Bridge(α)` the constant-weight family `t^α ((1+t)/2)^{1-2α}` and
/// `VariantBridge(p)` the family with step weight `p·1[λ ≥ 1-p]`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    /// `(1 + t)/2`, the maximal element.
    Sld,
    /// `((1 + √t)/2)²`.
    Wy,
    Wyd(f64),
    /// `(t - 1)/ln t`.
    KuboMori,
    /// `2t/(1 + t)`, the minimal element.
    Harmonic,
    /// `√t`.
    Geometric,
    Bridge(f64),
    VariantBridge(f64),
}

pub fn catalog(name: &str) -> Result<MonotoneFunction> {
    name.parse::<FunctionSpec>()?.build()
}

impl FromStr for FunctionSpec {
    type Err = Error;

    /// Accepts `name`, `name:param` and `name(param)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => match s.strip_suffix(')').and_then(|r| r.split_once('(')) {
                Some((n, p)) => (n.trim(), Some(p.trim())),
                None => (s, None),
            },
        };
        let need = |label: &'static str| -> Result<f64> {
            let raw = param.ok_or_else(|| Error::UnknownName(format!("{name} (missing parameter {label})")))?;
            raw.parse::<f64>().map_err(|_| Error::UnknownName(s.to_string()))
        };
        let lower = name.to_ascii_lowercase();
        let spec = match lower.as_str() {
            "sld" | "arithmetic" | "f_max" | "bures" => FunctionSpec::Sld,
            "wy" | "wigner_yanase" => FunctionSpec::Wy,
            "wyd" => FunctionSpec::Wyd(need("p")?),
            "kubo_mori" | "km" | "logarithmic" => FunctionSpec::KuboMori,
            "harmonic" | "f_min" => FunctionSpec::Harmonic,
            "geometric" => FunctionSpec::Geometric,
            "bridge" => FunctionSpec::Bridge(need("alpha")?),
            "variant_bridge" => FunctionSpec::VariantBridge(need("p")?),
            _ => return Err(Error::UnknownName(s.to_string())),
        };
        if param.is_some()
            && matches!(
                spec,
                FunctionSpec::Sld
                    | FunctionSpec::Wy
                    | FunctionSpec::KuboMori
                    | FunctionSpec::Harmonic
                    | FunctionSpec::Geometric
            )
        {
            return Err(Error::UnknownName(s.to_string()));
        }
        Ok(spec)
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Sld => f.write_str("sld"),
            FunctionSpec::Wy => f.write_str("wy"),
            FunctionSpec::Wyd(p) => write!(f, "wyd:{p}"),
            FunctionSpec::KuboMori => f.write_str("kubo_mori"),
            FunctionSpec::Harmonic => f.write_str("harmonic"),
            FunctionSpec::Geometric => f.write_str("geometric"),
            FunctionSpec::Bridge(a) => write!(f, "bridge:{a}"),
            FunctionSpec::VariantBridge(p) => write!(f, "variant_bridge:{p}"),
        }
    }
}

fn check_range(name: &'static str, value: f64, lo: f64, hi: f64, open: bool) -> Result<()> {
    let ok = if open {
        value > lo && value < hi
    } else {
        value >= lo && value <= hi
    };
    if ok {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value })
    }
}

impl FunctionSpec {
    pub fn validate_parameter(&self) -> Result<()> {
        match *self {
            FunctionSpec::Wyd(p) => check_range("p", p, 0.0, 1.0, true),
            FunctionSpec::Bridge(a) => check_range("alpha", a, 0.0, 1.0, false),
            FunctionSpec::VariantBridge(p) => check_range("p", p, 0.0, 1.0, false),
            _ => Ok(()),
        }
    }

    /// Analytic `f(0)`.
    pub fn f_at_zero(&self) -> f64 {
        match *self {
            FunctionSpec::Sld => 0.5,
            FunctionSpec::Wy => 0.25,
            FunctionSpec::Wyd(p) => p * (1.0 - p),
            FunctionSpec::KuboMori | FunctionSpec::Harmonic | FunctionSpec::Geometric => 0.0,
            FunctionSpec::Bridge(a) => {
                if a == 0.0 {
                    0.5
                } else {
                    0.0
                }
            }
            FunctionSpec::VariantBridge(p) => {
                let q = 1.0 - p;
                0.5 * (4.0 * q / ((1.0 + q) * (1.0 + q))).powf(p)
            }
        }
    }

    pub fn is_regular(&self) -> bool {
        self.f_at_zero() > 0.0
    }

    pub fn weight(&self) -> Option<Weight> {
        match *self {
            FunctionSpec::Sld => Some(Weight::constant(0.0)),
            FunctionSpec::Harmonic => Some(Weight::constant(1.0)),
            FunctionSpec::Geometric => Some(Weight::constant(0.5)),
            FunctionSpec::Bridge(a) => Some(Weight::constant(a)),
            FunctionSpec::Wy => Some(Weight::wyd(0.5)),
            FunctionSpec::Wyd(p) => Some(Weight::wyd(p)),
            FunctionSpec::VariantBridge(p) => Some(Weight::variant_bridge(p)),
            FunctionSpec::KuboMori => None,
        }
    }

    pub fn build(&self) -> Result<MonotoneFunction> {
        self.validate_parameter()?;
        let raw: RawFn = match *self {
            FunctionSpec::Sld => Arc::new(sld),
            FunctionSpec::Wy => Arc::new(wy),
            FunctionSpec::Wyd(p) => Arc::new(move |t| wyd(p, t)),
            FunctionSpec::KuboMori => Arc::new(kubo_mori),
            FunctionSpec::Harmonic => Arc::new(harmonic),
            FunctionSpec::Geometric => Arc::new(|t: f64| t.sqrt()),
            FunctionSpec::Bridge(a) => Arc::new(move |t| bridge(a, t)),
            FunctionSpec::VariantBridge(p) => Arc::new(move |t| variant_bridge(p, t)),
        };
        let name: String = self.to_string();
        Ok(MonotoneFunction::from_parts(name, self.f_at_zero(), raw, self.weight()))
    }
}

fn sld(t: f64) -> f64 {
    (1.0 + t) / 2.0
}

fn wy(t: f64) -> f64 {
    let s = (t.sqrt() + 1.0) / 2.0;
    s * s
}

fn harmonic(t: f64) -> f64 {
    2.0 * t / (t + 1.0)
}

/// `p(1-p)(t-1)²/((t^p-1)(t^{1-p}-1))`, written with `u = ln t` as
/// `p q expm1(u)² / (expm1(pu) expm1(qu))`. Near `t = 1` it equals
/// `e^{u/2}(1 + (1/24 + pq/12)u² + O(u⁴))`.
pub(crate) fn wyd(p: f64, t: f64) -> f64 {
    let q = 1.0 - p;
    if t == 0.0 {
        return p * q;
    }
    if (t - 1.0).abs() < SERIES_RADIUS {
        let u = (t - 1.0).ln_1p();
        return (0.5 * u).exp() * (1.0 + (1.0 / 24.0 + p * q / 12.0) * u * u);
    }
    let u = t.ln();
    let e = u.exp_m1();
    p * q * e * e / ((p * u).exp_m1() * (q * u).exp_m1())
}

/// `(t-1)/ln t`; near `t = 1`, `e^{u/2}(1 + u²/24 + u⁴/1920)`.
fn kubo_mori(t: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    if (t - 1.0).abs() < SERIES_RADIUS {
        let u = (t - 1.0).ln_1p();
        let u2 = u * u;
        return (0.5 * u).exp() * (1.0 + u2 / 24.0 + u2 * u2 / 1920.0);
    }
    (t - 1.0) / t.ln()
}

fn bridge(alpha: f64, t: f64) -> f64 {
    t.powf(alpha) * ((1.0 + t) / 2.0).powf(1.0 - 2.0 * alpha)
}

/// Closed form of the step-weight representation: with `q = 1 - p`,
/// `f(t) = ((1+t)/2) [4(q+t)(1+qt)/((1+t)²(1+q)²)]^p`.
fn variant_bridge(p: f64, t: f64) -> f64 {
    let q = 1.0 - p;
    let ratio = 4.0 * (q + t) * (1.0 + q * t) / ((1.0 + t) * (1.0 + t) * ((1.0 + q) * (1.0 + q)));
    (1.0 + t) / 2.0 * ratio.powf(p)
}
