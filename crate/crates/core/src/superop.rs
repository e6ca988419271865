//! Superoperators `k(L_ρ, R_ρ)` for a scalar kernel `k`, applied entrywise
//! in the eigenbasis of `ρ`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::functions::MonotoneFunction;
use crate::matrix::{c, ComplexMatrix, DensityMatrix, C64};

/// Relative eigenvalue gap below which the diagonal limit of a kernel is used.
pub const DIAGONAL_GAP: f64 = 1e-12;

/// Faithfulness threshold for the Morozova kernel.
pub const FAITHFUL_TOL: f64 = 1e-12;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum KernelKind {
    /// `m_f(x, y) = y f(x/y)`.
    Mean,
    /// `c_f = 1/m_f`.
    Morozova,
    /// `č(x, y) = f(0)/m_f(x, y)`.
    Check,
}

/// Kernel values `k(λᵢ, λⱼ)` for one `(f, ρ)` pair, reusable across
/// observables.
#[derive(Clone, Debug)]
pub struct KernelTable {
    kind: KernelKind,
    dim: usize,
    basis: ComplexMatrix,
    values: Vec<f64>,
}

impl KernelTable {
    pub fn new(kind: KernelKind, f: &MonotoneFunction, rho: &DensityMatrix) -> Result<Self> {
        let lambda = rho.eigenvalues();
        match kind {
            KernelKind::Morozova if rho.min_eigenvalue() <= FAITHFUL_TOL => {
                return Err(Error::NotFaithful {
                    min_eigenvalue: rho.min_eigenvalue(),
                })
            }
            KernelKind::Check => f.require_regular()?,
            _ => {}
        }
        let f0 = f.f_at_zero();
        let gap = DIAGONAL_GAP * rho.max_eigenvalue();
        let dim = lambda.len();
        let mut values = Vec::with_capacity(dim * dim);
        for &x in lambda {
            for &y in lambda {
                let m = if (x - y).abs() < gap {
                    0.5 * (x + y)
                } else {
                    f.mean(x, y)
                };
                let k = match kind {
                    KernelKind::Mean => m,
                    KernelKind::Morozova => 1.0 / m,
                    KernelKind::Check if m == 0.0 => 0.0,
                    KernelKind::Check => f0 / m,
                };
                values.push(k);
            }
        }
        Ok(Self {
            kind,
            dim,
            basis: rho.eigenvectors().clone(),
            values,
        })
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `k(λᵢ, λⱼ)`, indices in ascending eigenvalue order.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.dim + j]
    }

    /// `V† A V` for the eigenbasis `V` of `ρ`.
    pub fn to_eigenbasis(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.basis.check_dim(a)?;
        Ok(&(&self.basis.adjoint() * a) * &self.basis)
    }

    pub fn apply(&self, a: &ComplexMatrix) -> Result<ComplexMatrix> {
        let t = self.to_eigenbasis(a)?;
        let scaled = ComplexMatrix::from_fn(self.dim, |i, j| t.get(i, j) * self.value(i, j));
        Ok(&(&self.basis * &scaled) * &self.basis.adjoint())
    }

    /// `Tr(B† k(L, R) A)`.
    pub fn pairing(&self, b: &ComplexMatrix, a: &ComplexMatrix) -> Result<C64> {
        let ta = self.to_eigenbasis(a)?;
        let tb = self.to_eigenbasis(b)?;
        let mut acc = c(0.0, 0.0);
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += tb.get(i, j).conj() * ta.get(i, j) * self.value(i, j);
            }
        }
        Ok(acc)
    }

    /// `Tr(A† k(L, R) A)`.
    pub fn quadratic_form(&self, a: &ComplexMatrix) -> Result<f64> {
        let t = self.to_eigenbasis(a)?;
        let mut acc = 0.0;
        for i in 0..self.dim {
            for j in 0..self.dim {
                acc += t.get(i, j).norm_sqr() * self.value(i, j);
            }
        }
        Ok(acc)
    }
}

pub fn apply_kernel(
    kind: KernelKind,
    f: &MonotoneFunction,
    rho: &DensityMatrix,
    a: &ComplexMatrix,
) -> Result<ComplexMatrix> {
    rho.matrix().check_dim(a)?;
    KernelTable::new(kind, f, rho)?.apply(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::catalog;
    use crate::states::{haar_unitary, random_square, rng, sample_density};

    const NAMES: [&str; 6] = ["sld", "wy", "wyd:0.3", "kubo_mori", "harmonic", "bridge:0.4"];

    #[test]
    fn mean_of_diagonal_is_product() {
        let rho = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.3, 0.7])).unwrap();
        let a = ComplexMatrix::from_diagonal(&[2.0, -5.0]);
        for name in NAMES {
            let out = apply_kernel(KernelKind::Mean, &catalog(name).unwrap(), &rho, &a).unwrap();
            let expected = ComplexMatrix::from_diagonal(&[0.6, -3.5]);
            assert!(out.max_abs_diff(&expected) < 1e-14, "{name}");
        }
    }

    #[test]
    fn arithmetic_mean_is_anticommutator() {
        let mut r = rng(1);
        let sld = catalog("sld").unwrap();
        for dim in 2..=6 {
            let rho = sample_density(&mut r, dim, dim).unwrap();
            let a = random_square(&mut r, dim);
            let out = apply_kernel(KernelKind::Mean, &sld, &rho, &a).unwrap();
            let direct = (&(rho.matrix() * &a) + &(&a * rho.matrix())).scale(c(0.5, 0.0));
            assert!(out.max_abs_diff(&direct) < 1e-10);
        }
    }

    #[test]
    fn morozova_inverts_mean() {
        let mut r = rng(2);
        for name in NAMES {
            let f = catalog(name).unwrap();
            let rho = sample_density(&mut r, 4, 4).unwrap();
            let a = random_square(&mut r, 4);
            let m = apply_kernel(KernelKind::Mean, &f, &rho, &a).unwrap();
            let back = apply_kernel(KernelKind::Morozova, &f, &rho, &m).unwrap();
            assert!(back.max_abs_diff(&a) < 1e-9, "{name}");
        }
    }

    #[test]
    fn zero_eigenvalue_pairs_vanish() {
        let rho = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.0, 0.0, 1.0])).unwrap();
        let a = ComplexMatrix::from_fn(3, |_, _| c(1.0, 1.0));
        let f = catalog("wy").unwrap();
        let out = apply_kernel(KernelKind::Mean, &f, &rho, &a).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(out.get(i, j), c(0.0, 0.0));
            }
        }
        // m_f(0, 1) = f(0)
        assert!((out.get(0, 2) - c(0.25, 0.25)).norm() < 1e-15);
        assert!((out.get(2, 2) - c(1.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn kernel_errors() {
        let singular = DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.0, 1.0])).unwrap();
        let a = ComplexMatrix::identity(2);
        let wy = catalog("wy").unwrap();
        assert!(matches!(
            apply_kernel(KernelKind::Morozova, &wy, &singular, &a),
            Err(Error::NotFaithful { .. })
        ));
        let harmonic = catalog("harmonic").unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            apply_kernel(KernelKind::Check, &harmonic, &rho, &a),
            Err(Error::NotRegular(_))
        ));
        assert!(matches!(
            apply_kernel(KernelKind::Mean, &wy, &rho, &ComplexMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn check_kernel_diagonal_limit() {
        let rho = DensityMatrix::maximally_mixed(3);
        let wy = catalog("wy").unwrap();
        let t = KernelTable::new(KernelKind::Check, &wy, &rho).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!((t.value(i, j) - 0.25 * 3.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn self_adjoint_and_positive() {
        let mut r = rng(3);
        for name in NAMES {
            let f = catalog(name).unwrap();
            for rank in [2, 4] {
                let rho = sample_density(&mut r, 4, rank).unwrap();
                let t = KernelTable::new(KernelKind::Mean, &f, &rho).unwrap();
                let a = random_square(&mut r, 4);
                let b = random_square(&mut r, 4);
                let lhs = t.pairing(&b, &a).unwrap();
                let rhs = t.pairing(&a, &b).unwrap().conj();
                assert!((lhs - rhs).norm() < 1e-10, "{name}");
                assert!(t.pairing(&a, &a).unwrap().re >= -1e-10);
                assert!((t.pairing(&a, &a).unwrap().re - t.quadratic_form(&a).unwrap()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernel_monotone_in_f() {
        // f_min ≤ wy ≤ f_max pointwise.
        let chain = ["harmonic", "wy", "sld"].map(|n| catalog(n).unwrap());
        let mut r = rng(4);
        for _ in 0..20 {
            let rho = sample_density(&mut r, 3, 2).unwrap();
            let a = random_square(&mut r, 3);
            let q: Vec<f64> = chain
                .iter()
                .map(|f| {
                    KernelTable::new(KernelKind::Mean, f, &rho)
                        .unwrap()
                        .quadratic_form(&a)
                        .unwrap()
                })
                .collect();
            assert!(q[0] <= q[1] + 1e-10 && q[1] <= q[2] + 1e-10, "{q:?}");
        }
    }

    #[test]
    fn basis_covariance() {
        let mut r = rng(5);
        for name in NAMES {
            let f = catalog(name).unwrap();
            let rho = sample_density(&mut r, 3, 3).unwrap();
            let a = random_square(&mut r, 3);
            let u = haar_unitary(&mut r, 3);
            let rotated = rho.conjugate_by(&u).unwrap();
            let ua = &(&u * &a) * &u.adjoint();
            let lhs = apply_kernel(KernelKind::Mean, &f, &rotated, &ua).unwrap();
            let out = apply_kernel(KernelKind::Mean, &f, &rho, &a).unwrap();
            let rhs = &(&u * &out) * &u.adjoint();
            assert!(lhs.max_abs_diff(&rhs) < 1e-9, "{name}");
        }
    }
}
