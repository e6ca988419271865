//! Variances, f-covariances, monotone metrics and metric adjusted skew
//! information.

use alloc::vec::Vec;

use crate::error::Result;
use crate::functions::{catalog, f_tilde, MonotoneFunction};
use crate::matrix::{c, commutator, expectation, ComplexMatrix, DensityMatrix, Observable, C64};
use crate::superop::{KernelKind, KernelTable};

/// Negative values of this size are treated as roundoff and clamped to zero.
pub const CLAMP_TOL: f64 = 1e-10;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EvaluationPath {
    /// `½ Tr(C† č(L, R) C)` with `C = i[ρ, A]`.
    CommutatorKernel,
    /// `Var_ρ(A) − Var^{f̃}_ρ(A)`.
    VarianceDifference,
}

#[derive(Copy, Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub value: f64,
    pub path: EvaluationPath,
    /// `|VarianceDifference − CommutatorKernel|`.
    pub cross_residual: f64,
}

/// `Tr ρA² − (Tr ρA)²`.
pub fn variance(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    let a0 = a.centered(rho)?;
    let sq = Observable::unchecked(a0.matrix() * a0.matrix());
    expectation(rho, &sq)
}

/// Symmetrized covariance `½ Tr ρ{A₀, B₀}`.
pub fn covariance(rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<f64> {
    let a0 = a.centered(rho)?;
    let b0 = b.centered(rho)?;
    let ab = a0.matrix() * b0.matrix();
    let sym = Observable::unchecked((&ab + &ab.adjoint()).scale(c(0.5, 0.0)));
    expectation(rho, &sym)
}

/// `Tr(B₀ m_f(L_ρ, R_ρ) A₀)`, linear in `A` and conjugate linear in `B`.
pub fn f_covariance(f: &MonotoneFunction, rho: &DensityMatrix, a: &Observable, b: &Observable) -> Result<C64> {
    let table = KernelTable::new(KernelKind::Mean, f, rho)?;
    table.pairing(b.centered(rho)?.matrix(), a.centered(rho)?.matrix())
}

/// `Var^f_ρ(A) = Cov^f_ρ(A, A)`.
pub fn f_variance(f: &MonotoneFunction, rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    let table = KernelTable::new(KernelKind::Mean, f, rho)?;
    table.quadratic_form(a.centered(rho)?.matrix())
}

/// Monotone metric `⟨A, B⟩_{ρ,f} = Tr(A† c_f(L_ρ, R_ρ) B)` on a faithful state.
pub fn qfi_metric(f: &MonotoneFunction, rho: &DensityMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<C64> {
    KernelTable::new(KernelKind::Morozova, f, rho)?.pairing(a, b)
}

fn clamp(v: f64) -> f64 {
    if (-CLAMP_TOL..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

/// Metric adjusted skew information `I^f_ρ(A)` for a regular `f`, evaluated
/// along both paths. The reported value is the variance difference.
pub fn skew_information(f: &MonotoneFunction, rho: &DensityMatrix, a: &Observable) -> Result<MeasureReport> {
    f.require_regular()?;
    let a0 = a.centered(rho)?;
    let sld = catalog("sld")?;
    let var = KernelTable::new(KernelKind::Mean, &sld, rho)?.quadratic_form(a0.matrix())?;
    let var_tilde = KernelTable::new(KernelKind::Mean, &f_tilde(f)?, rho)?.quadratic_form(a0.matrix())?;
    let difference = var - var_tilde;

    let comm = commutator(rho.matrix(), a.matrix())?;
    let kernel = 0.5 * KernelTable::new(KernelKind::Check, f, rho)?.quadratic_form(&comm)?;

    Ok(MeasureReport {
        value: clamp(difference),
        path: EvaluationPath::VarianceDifference,
        cross_residual: (difference - kernel).abs(),
    })
}

/// `I^f_ρ(A, B) = Cov_ρ(A, B) − Cov^{f̃}_ρ(A, B)`.
pub fn skew_information_sesquilinear(
    f: &MonotoneFunction,
    rho: &DensityMatrix,
    a: &Observable,
    b: &Observable,
) -> Result<C64> {
    f.require_regular()?;
    let sld = catalog("sld")?;
    Ok(f_covariance(&sld, rho, a, b)? - f_covariance(&f_tilde(f)?, rho, a, b)?)
}

/// Entrywise weights `w_ij = f(0)(λᵢ − λⱼ)² / (2 m_f(λᵢ, λⱼ))` such that
/// `I^f_ρ(A) = Σ w_ij |(V†AV)_ij|²` in the eigenbasis `V` of `ρ`.
#[derive(Clone, Debug)]
pub struct SkewWeights {
    table: KernelTable,
    weights: Vec<f64>,
}

impl SkewWeights {
    pub fn new(f: &MonotoneFunction, rho: &DensityMatrix) -> Result<Self> {
        let table = KernelTable::new(KernelKind::Check, f, rho)?;
        let lambda = rho.eigenvalues();
        let dim = lambda.len();
        let mut weights = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let d = lambda[i] - lambda[j];
                weights.push(0.5 * d * d * table.value(i, j));
            }
        }
        Ok(Self { table, weights })
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    /// `I^f_ρ(A)` for Hermitian `A`.
    pub fn evaluate(&self, a: &ComplexMatrix) -> Result<f64> {
        let t = self.table.to_eigenbasis(a)?;
        let dim = self.dim();
        let mut acc = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                acc += self.weights[i * dim + j] * t.get(i, j).norm_sqr();
            }
        }
        Ok(acc)
    }
}
