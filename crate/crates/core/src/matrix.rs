//! Dense complex matrices, observables, density matrices and bipartite states.
//!
//! Matrices are stored densely (`nalgebra::DMatrix`); every type here is
//! immutable once constructed. Functions of Hermitian matrices are evaluated
//! through the spectral decomposition `V f(diag λ) V†`.

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};
#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::functions::MonotoneFunction;

pub type C64 = Complex<f64>;

/// Absolute tolerance on `max |a_ij - conj(a_ji)|` for unit-scale matrices.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues of a state in `[-CLIP_TOL, 0)` are set to zero, as are
/// positive ones below [`roundoff_floor`].
pub const CLIP_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
/// Maximum deviation of `V†V` from the identity for a cached eigenbasis.
pub const UNITARY_TOL: f64 = 1e-10;
/// Smallest eigenvalue accepted as strictly positive.
pub const POSITIVE_TOL: f64 = 1e-12;

const EIGEN_MAX_ITERS: usize = 10_000;

/// `4 d ε`: magnitude of eigenvalue noise for a unit-trace state.
pub fn roundoff_floor(dim: usize) -> f64 {
    4.0 * dim as f64 * f64::EPSILON
}

/// Square complex matrix with finite entries.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::Empty);
        }
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self(m))
    }

    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn from_row_slice(dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub(crate) fn wrap(m: DMatrix<C64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        Self(m)
    }

    pub(crate) fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self(DMatrix::from_fn(dim, dim, f))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(DMatrix::zeros(dim, dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                C64::new(diag[i], 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn pauli_x() -> Self {
        Self(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        ))
    }

    pub fn pauli_y() -> Self {
        Self(DMatrix::from_row_slice(
            2,
            2,
            &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        ))
    }

    pub fn pauli_z() -> Self {
        Self::from_diagonal(&[1.0, -1.0])
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self(&self.0 * factor)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    /// Position and size of the largest violation of `a_ij = conj(a_ji)`.
    pub fn hermitian_residual(&self) -> (usize, usize, f64) {
        let n = self.dim();
        let mut worst = (0, 0, 0.0);
        for i in 0..n {
            for j in i..n {
                let r = (self.0[(i, j)] - self.0[(j, i)].conj()).norm();
                if r > worst.2 {
                    worst = (i, j, r);
                }
            }
        }
        worst
    }

    /// `(A + A†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    /// Checks Hermiticity against [`HERMITIAN_TOL`] (scaled by the entry
    /// magnitude for matrices larger than unit scale) and returns the
    /// symmetrized matrix.
    pub fn to_hermitian(&self) -> Result<Self> {
        let (row, col, asymmetry) = self.hermitian_residual();
        if asymmetry > HERMITIAN_TOL * self.max_abs().max(1.0) {
            return Err(Error::NotHermitian { row, col, asymmetry });
        }
        Ok(self.hermitian_part())
    }

    pub(crate) fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let spectrum = eigh(&self.hermitian_part())?;
        Ok(spectrum.eigenvalues[0])
    }
}

#[inline]
pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 * &rhs.0)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 + &rhs.0)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix(&self.0 - &rhs.0)
    }
}

/// Eigenvalues in ascending order with the matching unitary eigenbasis.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(g(λ)) V†`.
    pub fn map(&self, mut g: impl FnMut(f64) -> f64) -> ComplexMatrix {
        let v = self.eigenvectors.as_dmatrix();
        let mut scaled = v.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let factor = C64::new(g(lambda), 0.0);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= factor);
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map(|lambda| lambda)
    }
}

/// Hermitian eigendecomposition without validation of the input.
pub(crate) fn eigh(m: &ComplexMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let eig = SymmetricEigen::try_new(m.0.clone(), f64::EPSILON, EIGEN_MAX_ITERS).ok_or(Error::EigenFailure)?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let eigenvectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix(eigenvectors),
    })
}

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
pub fn spectral_decompose(m: &ComplexMatrix) -> Result<Spectrum> {
    eigh(&m.to_hermitian()?)
}

/// A Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Observable(ComplexMatrix);

impl Observable {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        Ok(Self(m.to_hermitian()?))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        Self(ComplexMatrix::from_diagonal(diag))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `A ⊗ B`.
    pub fn tensor(&self, other: &Observable) -> Observable {
        Observable(tensor(&self.0, &other.0))
    }

    /// `A - (Tr ρA) I`.
    pub fn centered(&self, rho: &DensityMatrix) -> Result<Observable> {
        let mean = expectation(rho, self)?;
        let shift = ComplexMatrix::identity(self.dim()).scale(C64::new(mean, 0.0));
        Ok(Observable(&self.0 - &shift))
    }

    pub(crate) fn unchecked(m: ComplexMatrix) -> Self {
        Self(m)
    }
}

/// Hermitian, positive semi-definite, unit-trace matrix with its cached
/// spectral decomposition.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: Spectrum,
}

impl DensityMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let matrix = m.to_hermitian()?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidTrace { trace });
        }
        let mut spectrum = eigh(&matrix)?;
        let min = spectrum.eigenvalues[0];
        if min < -CLIP_TOL {
            return Err(Error::NegativeEigenvalue { eigenvalue: min });
        }
        // Eigenvalues at the level of the eigensolver's roundoff are zero;
        // left alone they leak into kernels like √x with size √ε.
        let floor = roundoff_floor(matrix.dim());
        for lambda in spectrum.eigenvalues.iter_mut() {
            if *lambda < floor {
                *lambda = 0.0;
            }
        }
        let v = spectrum.eigenvectors.as_dmatrix();
        let gram = ComplexMatrix(v.adjoint() * v);
        if gram.max_abs_diff(&ComplexMatrix::identity(gram.dim())) > UNITARY_TOL {
            return Err(Error::EigenFailure);
        }
        Ok(Self { matrix, spectrum })
    }

    /// Divides a positive semi-definite matrix by its trace before validating.
    pub fn normalized(m: ComplexMatrix) -> Result<Self> {
        let trace = m.trace().re;
        if !(trace > 0.0) {
            return Err(Error::InvalidTrace { trace });
        }
        Self::new(m.scale(C64::new(1.0 / trace, 0.0)))
    }

    /// `|ψ⟩⟨ψ| / ⟨ψ|ψ⟩`.
    pub fn from_pure(psi: &[C64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if psi.is_empty() || !(norm2 > 0.0) {
            return Err(Error::Empty);
        }
        let m = ComplexMatrix::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj() / norm2);
        Self::new(m)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let m = ComplexMatrix::identity(dim).scale(C64::new(1.0 / dim as f64, 0.0));
        Self::new(m).expect("maximally mixed state is valid")
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigenvalues in ascending order, clipped at zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.spectrum.eigenvectors
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.spectrum.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.spectrum.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Minimum eigenvalue above [`POSITIVE_TOL`].
    pub fn is_faithful(&self) -> bool {
        self.min_eigenvalue() > POSITIVE_TOL
    }

    pub fn rank(&self, tol: f64) -> usize {
        self.spectrum.eigenvalues.iter().filter(|&&l| l > tol).count()
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &ComplexMatrix) -> Result<Self> {
        self.matrix.check_dim(u)?;
        Self::new(&(u * &self.matrix) * &u.adjoint())
    }

    /// `t ρ + (1 - t) σ`.
    pub fn mix(&self, other: &Self, t: f64) -> Result<Self> {
        self.matrix.check_dim(&other.matrix)?;
        let a = self.matrix.scale(C64::new(t, 0.0));
        let b = other.matrix.scale(C64::new(1.0 - t, 0.0));
        Self::new(&a + &b)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

/// A density matrix on `H₁ ⊗ H₂` with `dim = d1 · d2`.
#[derive(Clone, Debug)]
pub struct BipartiteState {
    state: DensityMatrix,
    d1: usize,
    d2: usize,
}

impl BipartiteState {
    pub fn new(state: DensityMatrix, d1: usize, d2: usize) -> Result<Self> {
        if d1 == 0 || d2 == 0 || d1 * d2 != state.dim() {
            return Err(Error::InvalidFactorization {
                d1,
                d2,
                dim: state.dim(),
            });
        }
        Ok(Self { state, d1, d2 })
    }

    /// `ρ₁ ⊗ ρ₂`.
    pub fn product(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<Self> {
        let m = tensor(rho1.matrix(), rho2.matrix());
        Self::new(DensityMatrix::new(m)?, rho1.dim(), rho2.dim())
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> Self {
        let s = 1.0 / 2.0_f64.sqrt();
        let psi = [c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)];
        let state = DensityMatrix::from_pure(&psi).expect("Bell state is valid");
        Self { state, d1: 2, d2: 2 }
    }

    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn partial_trace(&self, keep: Subsystem) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }

    /// `(U₁ ⊗ U₂) ρ (U₁ ⊗ U₂)†`.
    pub fn local_unitary(&self, u1: &ComplexMatrix, u2: &ComplexMatrix) -> Result<Self> {
        if u1.dim() != self.d1 {
            return Err(Error::DimensionMismatch {
                expected: self.d1,
                found: u1.dim(),
            });
        }
        if u2.dim() != self.d2 {
            return Err(Error::DimensionMismatch {
                expected: self.d2,
                found: u2.dim(),
            });
        }
        let u = tensor(u1, u2);
        Self::new(self.state.conjugate_by(&u)?, self.d1, self.d2)
    }
}

/// `Tr(ρA)`.
pub fn expectation(rho: &DensityMatrix, a: &Observable) -> Result<f64> {
    rho.matrix().check_dim(a.matrix())?;
    let r = rho.matrix().as_dmatrix();
    let m = a.matrix().as_dmatrix();
    // Tr(ρA) = Σ_ij ρ_ij A_ji without forming the product.
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..r.nrows() {
        for j in 0..r.ncols() {
            acc += r[(i, j)] * m[(j, i)];
        }
    }
    Ok(acc.re)
}

/// Kronecker product `A ⊗ B`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.0.kronecker(&b.0))
}

pub fn partial_trace(s: &BipartiteState, keep: Subsystem) -> Result<DensityMatrix> {
    let (d1, d2) = (s.d1, s.d2);
    let rho = s.state.matrix().as_dmatrix();
    let reduced = match keep {
        Subsystem::First => ComplexMatrix::from_fn(d1, |a, b| (0..d2).map(|k| rho[(a * d2 + k, b * d2 + k)]).sum()),
        Subsystem::Second => ComplexMatrix::from_fn(d2, |a, b| (0..d1).map(|k| rho[(k * d2 + a, k * d2 + b)]).sum()),
    };
    DensityMatrix::new(reduced)
}

/// `i(AB - BA)`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_dim(b)?;
    let ab = a * b;
    let ba = b * a;
    Ok((&ab - &ba).scale(C64::new(0.0, 1.0)))
}

/// Kubo–Ando mean `A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}` of two positive
/// definite matrices.
pub fn matrix_mean(f: &MonotoneFunction, a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    a.check_dim(b)?;
    let sa = spectral_decompose(a)?;
    let sb = spectral_decompose(b)?;
    let min = sa.eigenvalues[0].min(sb.eigenvalues[0]);
    if min <= POSITIVE_TOL {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: min });
    }
    let a_half = sa.map(|l| l.sqrt());
    let a_inv_half = sa.map(|l| 1.0 / l.sqrt());
    let inner = (&(&a_inv_half * b) * &a_inv_half).hermitian_part();
    let f_inner = eigh(&inner)?.map(|l| f.eval(l.max(0.0)));
    Ok((&(&a_half * &f_inner) * &a_half).hermitian_part())
}
