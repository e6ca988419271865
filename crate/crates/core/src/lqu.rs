//! Metric adjusted local quantum uncertainty: the minimum of `I^f_ρ(K₁ ⊗ 1)`
//! over local observables `K₁` with a fixed spectrum `Λ`.
//!
//! `K₁ = U diag(Λ) U†` is optimized by a compass search over the off-diagonal
//! generators of `su(d₁)`; each accepted step multiplies `U` on the right by a
//! plane rotation, so the search is always centered at the current point.
//! Diagonal generators commute with `diag(Λ)` and are left out.

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::functions::{catalog, MonotoneFunction, SpectrumLambda};
use crate::matrix::{c, tensor, BipartiteState, ComplexMatrix, Observable};
use crate::measures::SkewWeights;
use crate::states::{haar_unitary, rng};
use crate::superop::{KernelKind, KernelTable};

const INITIAL_STEP: f64 = 0.3;
const SHRINK: f64 = 0.5;

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    pub n_starts: usize,
    /// Poll rounds per start.
    pub max_iters: usize,
    /// Final step size of the compass search.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            n_starts: 32,
            max_iters: 500,
            tol: 1e-9,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_starts == 0 {
            return Err(Error::InvalidConfig("n_starts must be at least 1"));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig("tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct LquResult {
    pub value: f64,
    /// `K₁` on the first factor.
    pub minimizer: Observable,
    pub starts: usize,
    pub best_start_index: usize,
    /// The two best starts agree within `10 tol`.
    pub converged: bool,
    /// Largest minus smallest start value.
    pub spread: f64,
}

/// Generator direction: a real (`σ_x`-like) or imaginary (`σ_y`-like)
/// rotation in the `(j, k)` plane.
#[derive(Copy, Clone)]
struct Plane {
    j: usize,
    k: usize,
    imaginary: bool,
}

fn planes(d: usize) -> Vec<Plane> {
    let mut out = Vec::new();
    for j in 0..d {
        for k in j + 1..d {
            out.push(Plane { j, k, imaginary: false });
            out.push(Plane { j, k, imaginary: true });
        }
    }
    out
}

/// `U exp(iεG)` for the plane generator `G`.
fn rotate(u: &ComplexMatrix, p: Plane, eps: f64) -> ComplexMatrix {
    let (s, co) = eps.sin_cos();
    // exp(iε σ_x) = [[cos, i sin], [i sin, cos]], exp(iε σ_y) = [[cos, sin], [−sin, cos]]
    let (off_jk, off_kj) = if p.imaginary {
        (c(s, 0.0), c(-s, 0.0))
    } else {
        (c(0.0, s), c(0.0, s))
    };
    let mut m = u.as_dmatrix().clone();
    for r in 0..m.nrows() {
        let a = u.get(r, p.j);
        let b = u.get(r, p.k);
        m[(r, p.j)] = a * co + b * off_kj;
        m[(r, p.k)] = a * off_jk + b * co;
    }
    ComplexMatrix::wrap(m)
}

fn local_observable(u: &ComplexMatrix, lambda: &SpectrumLambda) -> ComplexMatrix {
    let d = ComplexMatrix::from_diagonal(lambda.values());
    (&(u * &d) * &u.adjoint()).hermitian_part()
}

struct Objective {
    weights: SkewWeights,
    id2: ComplexMatrix,
}

impl Objective {
    fn value(&self, k1: &ComplexMatrix) -> f64 {
        self.weights.evaluate(&tensor(k1, &self.id2)).unwrap_or(f64::INFINITY)
    }
}

struct StartResult {
    value: f64,
    u: ComplexMatrix,
}

fn compass_search(
    obj: &Objective,
    lambda: &SpectrumLambda,
    mut u: ComplexMatrix,
    cfg: &OptimizerConfig,
) -> StartResult {
    let dirs = planes(lambda.len());
    let mut best = obj.value(&local_observable(&u, lambda));
    let mut step = INITIAL_STEP;
    let mut iters = 0;
    while step >= cfg.tol && iters < cfg.max_iters && !dirs.is_empty() {
        iters += 1;
        let mut improved: Option<(f64, ComplexMatrix)> = None;
        for &p in &dirs {
            for eps in [step, -step] {
                let cand = rotate(&u, p, eps);
                let v = obj.value(&local_observable(&cand, lambda));
                if v < improved.as_ref().map_or(best, |(b, _)| *b) {
                    improved = Some((v, cand));
                }
            }
        }
        match improved {
            Some((v, cand)) => {
                best = v;
                u = cand;
            }
            None => step *= SHRINK,
        }
    }
    StartResult { value: best, u }
}

/// `min { I^f_ρ(K₁ ⊗ 1) : σ(K₁) = Λ }`, the metric adjusted local quantum
/// uncertainty of `s` with respect to its first factor.
pub fn f_lqu(
    f: &MonotoneFunction,
    s: &BipartiteState,
    lambda: &SpectrumLambda,
    cfg: &OptimizerConfig,
) -> Result<LquResult> {
    f.require_regular()?;
    cfg.validate()?;
    if lambda.len() != s.d1() {
        return Err(Error::DimensionMismatch {
            expected: s.d1(),
            found: lambda.len(),
        });
    }
    let obj = Objective {
        weights: SkewWeights::new(f, s.state())?,
        id2: ComplexMatrix::identity(s.d2()),
    };
    let results: Vec<StartResult> = (0..cfg.n_starts)
        .map(|i| {
            let start = haar_unitary(&mut rng(cfg.seed ^ i as u64), s.d1());
            compass_search(&obj, lambda, start, cfg)
        })
        .collect();

    // lowest value, ties broken by lowest start index
    let mut best_index = 0;
    for (i, r) in results.iter().enumerate() {
        if r.value < results[best_index].value {
            best_index = i;
        }
    }
    let best = &results[best_index];
    let second = results
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != best_index)
        .map(|(_, r)| r.value)
        .fold(f64::INFINITY, f64::min);
    let max = results.iter().map(|r| r.value).fold(f64::NEG_INFINITY, f64::max);
    let converged = cfg.n_starts == 1 || (second - best.value).abs() <= 10.0 * cfg.tol;

    Ok(LquResult {
        value: best.value.max(0.0),
        minimizer: Observable::unchecked(local_observable(&best.u, lambda)),
        starts: cfg.n_starts,
        best_start_index: best_index,
        converged,
        spread: max - best.value,
    })
}

/// f-LQU with the Wigner–Yanase function.
pub fn lqu(s: &BipartiteState, lambda: &SpectrumLambda, cfg: &OptimizerConfig) -> Result<LquResult> {
    f_lqu(&catalog("wy")?, s, lambda, cfg)
}

/// f-LQU with the SLD function.
pub fn interferometric_power(s: &BipartiteState, lambda: &SpectrumLambda, cfg: &OptimizerConfig) -> Result<LquResult> {
    f_lqu(&catalog("sld")?, s, lambda, cfg)
}

/// Grid minimum of `I^f_ρ(K₁ ⊗ 1)` over qubit observables
/// `K₁ = λ̄ 1 + δ n·σ`, `δ = (Λ₀ − Λ₁)/2`, with the unit vector `n` on a
/// `grid_density × grid_density` grid in `(θ, φ)`. Since the objective is
/// quadratic in `K₁ − λ̄ 1`, `n` and `−n` give the same value and `φ` only
/// needs to cover `[0, π)`. Evaluated as a variance difference, independently
/// of the kernel used by [`f_lqu`].
pub fn brute_force_lqu(
    f: &MonotoneFunction,
    s: &BipartiteState,
    lambda: &SpectrumLambda,
    grid_density: usize,
) -> Result<f64> {
    if s.d1() != 2 {
        return Err(Error::UnsupportedDimension(s.d1()));
    }
    if lambda.len() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: lambda.len(),
        });
    }
    if grid_density < 2 {
        return Err(Error::InvalidConfig("grid_density must be at least 2"));
    }
    f.require_regular()?;
    let rho = s.state();
    let var = KernelTable::new(KernelKind::Mean, &catalog("sld")?, rho)?;
    let var_tilde = KernelTable::new(KernelKind::Mean, &crate::functions::f_tilde(f)?, rho)?;
    let id2 = ComplexMatrix::identity(s.d2());
    let [x, y, z] = [
        ComplexMatrix::pauli_x(),
        ComplexMatrix::pauli_y(),
        ComplexMatrix::pauli_z(),
    ]
    .map(|p| tensor(&p, &id2));

    let l = lambda.values();
    let delta = 0.5 * (l[0] - l[1]);
    let n = grid_density;
    let mut best = f64::INFINITY;
    for i in 0..n {
        let theta = core::f64::consts::PI * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let phi = core::f64::consts::PI * j as f64 / n as f64;
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = phi.sin_cos();
            let k =
                &(&x.scale(c(delta * st * cp, 0.0)) + &y.scale(c(delta * st * sp, 0.0))) + &z.scale(c(delta * ct, 0.0));
            let k0 = Observable::unchecked(k).centered(rho)?;
            let v = var.quadratic_form(k0.matrix())? - var_tilde.quadratic_form(k0.matrix())?;
            if v < best {
                best = v;
            }
        }
    }
    Ok(best.max(0.0))
}

/// Decides whether `s` is classical-quantum by thresholding the
/// Wigner–Yanase f-LQU with `Λ = (1, 2, …, d₁)`.
pub fn is_classical_quantum(s: &BipartiteState, tol: f64) -> bool {
    lqu(s, &SpectrumLambda::ladder(s.d1()), &OptimizerConfig::default())
        .map(|r| r.value < tol)
        .unwrap_or(false)
}
