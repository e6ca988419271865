//! Falsification test for the majorization order `f ⪯ g`, which holds when
//! `φ(t) = ((t+1)/2) f(t)/g(t)` is itself normalized, symmetric and operator
//! monotone. Operator monotonicity cannot be decided by sampling, so the
//! answer is a certificate rather than a proof.

// libm-backed float methods; unused when std is linked (e.g. under test).
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng as _, SeedableRng};

use super::{log_grid, MonotoneFunction};
use crate::matrix::{eigh, ComplexMatrix, C64};
use crate::states::{haar_unitary, random_wishart, Rng};

const MATRIX_TRIALS: usize = 200;
const MATRIX_TOL: f64 = 1e-8;
const SCALAR_TOL: f64 = 1e-10;
const SEED: u64 = 0x6d61_6a6f_7269_7a65;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ScalarProperty {
    Normalization,
    Symmetry,
    /// `2t/(1+t) ≤ φ(t) ≤ (1+t)/2`, satisfied by every member of the class.
    Bounds,
    Monotonicity,
}

#[derive(Clone, Debug)]
pub enum Witness {
    Scalar {
        t: f64,
        property: ScalarProperty,
        value: f64,
    },
    /// `A ≤ B` with `φ(B) − φ(A)` having the given negative eigenvalue.
    Matrix {
        a: ComplexMatrix,
        b: ComplexMatrix,
        min_eigenvalue: f64,
    },
}

#[derive(Clone, Debug)]
pub enum Majorization {
    Holds,
    Fails(Witness),
    /// `φ` produced non-finite values on the sample grid.
    Inconclusive,
}

impl Majorization {
    pub fn holds(&self) -> bool {
        matches!(self, Majorization::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Majorization::Fails(_))
    }
}

/// Tests `f ⪯ g`.
pub fn majorizes(f: &MonotoneFunction, g: &MonotoneFunction) -> Majorization {
    let phi = |t: f64| (t + 1.0) / 2.0 * f.eval(t) / g.eval(t);
    let scalar = |t, property, value| Majorization::Fails(Witness::Scalar { t, property, value });

    if log_grid().any(|t| !phi(t).is_finite()) {
        return Majorization::Inconclusive;
    }
    let one = phi(1.0);
    if (one - 1.0).abs() > SCALAR_TOL {
        return scalar(1.0, ScalarProperty::Normalization, one);
    }
    let mut prev = 0.0;
    for t in log_grid() {
        let v = phi(t);
        let mirrored = t * phi(1.0 / t);
        if (mirrored - v).abs() > SCALAR_TOL * v.max(1.0) {
            return scalar(t, ScalarProperty::Symmetry, v);
        }
        let upper = (1.0 + t) / 2.0;
        let lower = 2.0 * t / (1.0 + t);
        if v > upper * (1.0 + SCALAR_TOL) || v < lower * (1.0 - SCALAR_TOL) {
            return scalar(t, ScalarProperty::Bounds, v);
        }
        if v < prev * (1.0 - SCALAR_TOL) {
            return scalar(t, ScalarProperty::Monotonicity, v);
        }
        prev = v;
    }

    let mut rng = Rng::seed_from_u64(SEED);
    for _ in 0..MATRIX_TRIALS {
        let dim = rng.random_range(2..=5);
        let a = random_spread_positive(&mut rng, dim);
        let rank = rng.random_range(1..=dim);
        let scale = 10f64.powf(rng.random_range(-2.0..2.0));
        let p = random_wishart(&mut rng, dim, rank).scale(C64::new(scale, 0.0));
        let b = &a + &p;
        let (Ok(sa), Ok(sb)) = (eigh(&a), eigh(&b.hermitian_part())) else {
            return Majorization::Inconclusive;
        };
        let diff = &sb.map(&phi) - &sa.map(&phi);
        let Ok(sd) = eigh(&diff.hermitian_part()) else {
            return Majorization::Inconclusive;
        };
        let min = sd.eigenvalues[0];
        if !min.is_finite() {
            return Majorization::Inconclusive;
        }
        let scale = diff.max_abs().max(1.0);
        if min < -MATRIX_TOL * scale {
            return Majorization::Fails(Witness::Matrix {
                a,
                b,
                min_eigenvalue: min,
            });
        }
    }
    Majorization::Holds
}

/// Positive definite matrix with eigenvalues log-uniform in `[1e-2, 1e2]`.
fn random_spread_positive(rng: &mut Rng, dim: usize) -> ComplexMatrix {
    let u = haar_unitary(rng, dim);
    let diag: alloc::vec::Vec<f64> = (0..dim).map(|_| 10f64.powf(rng.random_range(-2.0..2.0))).collect();
    let d = ComplexMatrix::from_diagonal(&diag);
    (&(&u * &d) * &u.adjoint()).hermitian_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{catalog, MonotoneFunction};

    #[test]
    fn f_min_is_below_everything() {
        let fmin = catalog("f_min").unwrap();
        for name in [
            "sld",
            "wy",
            "wyd:0.3",
            "kubo_mori",
            "geometric",
            "harmonic",
            "variant_bridge:0.5",
            "bridge:0.2",
        ] {
            assert!(majorizes(&fmin, &catalog(name).unwrap()).holds(), "{name}");
        }
    }

    #[test]
    fn everything_is_below_f_max() {
        let fmax = catalog("sld").unwrap();
        for name in ["wy", "wyd:0.3", "kubo_mori", "geometric", "harmonic"] {
            assert!(majorizes(&catalog(name).unwrap(), &fmax).holds(), "{name}");
        }
    }

    #[test]
    fn f_max_is_not_below_f_min() {
        let cert = majorizes(&catalog("sld").unwrap(), &catalog("f_min").unwrap());
        assert!(matches!(cert, Majorization::Fails(Witness::Scalar { .. })), "{cert:?}");
    }

    #[test]
    fn wyd_order() {
        let half = catalog("wyd:0.5").unwrap();
        let p2 = catalog("wyd:0.2").unwrap();
        assert!(majorizes(&p2, &half).holds());
        assert!(majorizes(&half, &p2).fails());
    }

    #[test]
    fn antisymmetric_on_catalog() {
        let names = [
            "sld",
            "wy",
            "wyd:0.3",
            "kubo_mori",
            "geometric",
            "harmonic",
            "bridge:0.3",
            "variant_bridge:0.5",
        ];
        let fs: alloc::vec::Vec<MonotoneFunction> = names.iter().map(|n| catalog(n).unwrap()).collect();
        for i in 0..fs.len() {
            assert!(majorizes(&fs[i], &fs[i]).holds(), "{}", names[i]);
            for j in i + 1..fs.len() {
                let both = majorizes(&fs[i], &fs[j]).holds() && majorizes(&fs[j], &fs[i]).holds();
                assert!(!both, "{} and {}", names[i], names[j]);
            }
        }
    }

    #[test]
    fn non_operator_monotone_ratio_is_caught() {
        // φ = ((t+1)/2)·f/g with f = wy and g = sld gives wy itself; with
        // g = wy and f = sld we get ((t+1)/2)²/wy, which exceeds f_max.
        let cert = majorizes(&catalog("sld").unwrap(), &catalog("wy").unwrap());
        assert!(cert.fails());
    }

    #[test]
    fn inconclusive_on_non_finite() {
        let broken = MonotoneFunction::from_parts(
            "broken".into(),
            0.0,
            alloc::sync::Arc::new(|t: f64| if t < 1e-3 { f64::NAN } else { t.sqrt() }),
            None,
        );
        assert!(matches!(
            majorizes(&broken, &catalog("sld").unwrap()),
            Majorization::Inconclusive
        ));
    }
}
