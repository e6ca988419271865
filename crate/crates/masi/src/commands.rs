//! Command implementations. Each returns the CSV text it would print; floats
//! use the shortest representation that reads back exactly.

use std::fmt::Write as _;
use std::path::Path;

use masi_core::functions::FunctionSpec;
use masi_core::lqu::{f_lqu, LquResult, OptimizerConfig};
use masi_core::matrix::tensor;
use masi_core::measures::skew_information;
use masi_core::states;
use masi_core::{BipartiteState, ComplexMatrix, DensityMatrix, MonotoneFunction, Observable, SpectrumLambda};

use crate::error::{CliError, Result};
use crate::files::{ObservableFile, StateFile};

/// Quotes a CSV field when needed.
fn field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn label_for(file: &StateFile, path: &Path) -> String {
    file.label.clone().unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn load_state(path: &Path) -> Result<(BipartiteState, String)> {
    let file = StateFile::read(path)?;
    let state = file.to_state(path)?;
    Ok((state, label_for(&file, path)))
}

fn function(name: &str) -> Result<(MonotoneFunction, String)> {
    let spec: FunctionSpec = name.parse()?;
    Ok((spec.build()?, spec.to_string()))
}

/// Parses a comma-separated spectrum; defaults to `(1, …, d₁)` shifted to
/// zero mean.
pub fn spectrum(raw: Option<&str>, d1: usize) -> Result<SpectrumLambda> {
    let Some(raw) = raw else {
        return Ok(SpectrumLambda::centered_ladder(d1));
    };
    let values = raw
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("invalid spectrum entry `{}`", v.trim())))
        })
        .collect::<Result<Vec<f64>>>()?;
    if values.len() != d1 {
        return Err(CliError::SpectrumMismatch {
            expected: d1,
            found: values.len(),
        });
    }
    Ok(SpectrumLambda::new(values)?)
}

/// `label,f,value,residual`.
pub fn skew(state: &Path, f: &str, observable: &Path) -> Result<String> {
    let (s, label) = load_state(state)?;
    let (f, name) = function(f)?;
    let m = ObservableFile::read(observable)?.to_matrix(observable)?;
    let m = if m.dim() == s.d1() && s.d2() > 1 {
        tensor(&m, &ComplexMatrix::identity(s.d2()))
    } else {
        m
    };
    if m.dim() != s.d1() * s.d2() {
        return Err(CliError::parse(
            observable,
            format!(
                "observable has dimension {}, expected {} or {}",
                m.dim(),
                s.d1(),
                s.d1() * s.d2()
            ),
        ));
    }
    let a = Observable::new(m).map_err(|e| CliError::parse(observable, e.to_string()))?;
    let report = skew_information(&f, s.state(), &a)?;
    Ok(format!(
        "{},{},{:?},{:?}\n",
        field(&label),
        field(&name),
        report.value,
        report.cross_residual
    ))
}

fn lqu_row(label: &str, name: &str, r: &LquResult) -> String {
    format!(
        "{},{},{:?},{},{:?}\n",
        field(label),
        field(name),
        r.value,
        r.converged,
        r.spread
    )
}

/// `label,f,value,converged,spread`.
pub fn lqu(state: &Path, f: &str, spectrum_csv: Option<&str>, cfg: &OptimizerConfig) -> Result<String> {
    let (s, label) = load_state(state)?;
    let (f, name) = function(f)?;
    f.is_regular()
        .then_some(())
        .ok_or_else(|| masi_core::Error::NotRegular(name.clone()))?;
    let lambda = spectrum(spectrum_csv, s.d1())?;
    let r = f_lqu(&f, &s, &lambda, cfg)?;
    Ok(lqu_row(&label, &name, &r))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Wyd,
    Bridge,
    VariantBridge,
}

impl Family {
    fn member(self, x: f64) -> FunctionSpec {
        match self {
            Family::Wyd => FunctionSpec::Wyd(x),
            Family::Bridge => FunctionSpec::Bridge(x),
            Family::VariantBridge => FunctionSpec::VariantBridge(x),
        }
    }

    /// Default parameters: interior points `i/(k+1)` for the open WYD range,
    /// `k` equally spaced points of `[0, 1]` otherwise.
    fn default_grid(self, k: usize) -> Vec<f64> {
        match self {
            Family::Wyd => (1..=k).map(|i| i as f64 / (k + 1) as f64).collect(),
            _ => linspace(0.0, 1.0, k),
        }
    }
}

fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

/// Parses `lo,hi`.
pub fn range(raw: &str) -> Result<(f64, f64)> {
    let bad = || CliError::Usage(format!("invalid range `{raw}`, expected lo,hi"));
    let (lo, hi) = raw.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    if !(lo <= hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

/// `label,f,parameter,value,converged,spread`, one row per family member in
/// ascending parameter order. Every member is built and checked for
/// regularity before anything is computed.
pub fn sweep(
    state: &Path,
    family: Family,
    grid: usize,
    range: Option<(f64, f64)>,
    spectrum_csv: Option<&str>,
    cfg: &OptimizerConfig,
) -> Result<String> {
    if grid < 2 {
        return Err(CliError::Usage(format!("grid must be at least 2, got {grid}")));
    }
    let (s, label) = load_state(state)?;
    let lambda = spectrum(spectrum_csv, s.d1())?;
    let params = match range {
        Some((lo, hi)) => linspace(lo, hi, grid),
        None => family.default_grid(grid),
    };
    let members = params
        .iter()
        .map(|&x| {
            let spec = family.member(x);
            let f = spec.build()?;
            f.is_regular()
                .then_some(())
                .ok_or_else(|| masi_core::Error::NotRegular(spec.to_string()))?;
            Ok((x, spec.to_string(), f))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    for (x, name, f) in members {
        let r = f_lqu(&f, &s, &lambda, cfg)?;
        writeln!(
            out,
            "{},{},{:?},{:?},{},{:?}",
            field(&label),
            field(&name),
            x,
            r.value,
            r.converged,
            r.spread
        )
        .unwrap();
    }
    Ok(out)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    /// Random state of the given rank.
    Random,
    /// Haar-random pure state.
    Pure,
    /// Classical-quantum state in a random local basis.
    Cq,
    /// Product of two random full-rank states.
    Product,
    /// `(|00⟩ + |11⟩)/√2`.
    Bell,
    /// `1/(d₁d₂)`.
    MaximallyMixed,
}

/// A generated state as a JSON state file.
pub fn gen(
    kind: GenKind,
    d1: usize,
    d2: usize,
    rank: Option<usize>,
    seed: u64,
    label: Option<String>,
) -> Result<String> {
    if d1 == 0 || d2 == 0 {
        return Err(CliError::Usage("dimensions must be positive".into()));
    }
    let d = d1 * d2;
    let s = match kind {
        GenKind::Random => states::random_bipartite(d1, d2, rank.unwrap_or(d), seed)?,
        GenKind::Pure => BipartiteState::new(states::random_pure(d, seed)?, d1, d2)?,
        GenKind::Cq => states::random_classical_quantum(d1, d2, seed)?,
        GenKind::Product => {
            let r1 = states::random_density(d1, d1, seed)?;
            let r2 = states::random_density(d2, d2, seed ^ 0x9e37_79b9_7f4a_7c15)?;
            BipartiteState::product(&r1, &r2)?
        }
        GenKind::Bell => {
            if (d1, d2) != (2, 2) {
                return Err(CliError::Usage("the Bell state is two-qubit only".into()));
            }
            BipartiteState::bell()
        }
        GenKind::MaximallyMixed => BipartiteState::new(DensityMatrix::maximally_mixed(d), d1, d2)?,
    };
    Ok(StateFile::from_state(&s, label).to_json())
}
