//! Seeded generators: density matrices, Haar unitaries, classical-quantum
//! states and channels.
//!
//! Every generator is a pure function of its seed. The generator is ChaCha8
//! (`rand_chacha` 0.9) seeded with `SeedableRng::seed_from_u64`; Gaussian
//! samples come from `rand_distr::StandardNormal`.

// libm-backed float methods; unused when std is linked (e.g. under test).
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use nalgebra::DMatrix;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::matrix::{c, tensor, BipartiteState, ComplexMatrix, DensityMatrix, C64};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut Rng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// `rows x cols` matrix of standard complex Gaussians.
fn ginibre(rng: &mut Rng, rows: usize, cols: usize) -> DMatrix<C64> {
    // Fill row by row so that the sample order does not depend on storage.
    let mut m = DMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = gaussian(rng);
        }
    }
    m
}

pub fn random_square(rng: &mut Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::wrap(ginibre(rng, dim, dim))
}

pub fn random_hermitian(rng: &mut Rng, dim: usize) -> ComplexMatrix {
    random_square(rng, dim).hermitian_part()
}

/// `G G†` with `G` a `dim x rank` Gaussian matrix.
pub fn random_wishart(rng: &mut Rng, dim: usize, rank: usize) -> ComplexMatrix {
    let g = ginibre(rng, dim, rank);
    ComplexMatrix::wrap(&g * g.adjoint()).hermitian_part()
}

/// Well-conditioned positive definite matrix.
pub fn random_positive(rng: &mut Rng, dim: usize) -> ComplexMatrix {
    let w = random_wishart(rng, dim, dim).scale(c(1.0 / dim as f64, 0.0));
    &w + &ComplexMatrix::identity(dim).scale(c(0.1, 0.0))
}

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of `R` rotated to be real positive.
pub fn haar_unitary(rng: &mut Rng, dim: usize) -> ComplexMatrix {
    let (q, r) = ginibre(rng, dim, dim).qr().unpack();
    let mut q = q;
    for j in 0..dim {
        let d = r[(j, j)];
        let n = d.norm();
        let phase = if n > 0.0 { d / n } else { c(1.0, 0.0) };
        q.column_mut(j).iter_mut().for_each(|z| *z *= phase);
    }
    ComplexMatrix::wrap(q)
}

pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    haar_unitary(&mut rng(seed), dim)
}

/// `G G† / Tr(G G†)` with `G` a `dim x rank` Gaussian matrix.
pub fn sample_density(rng: &mut Rng, dim: usize, rank: usize) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    DensityMatrix::normalized(random_wishart(rng, dim, rank))
}

pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    sample_density(&mut rng(seed), dim, rank)
}

/// Haar-random pure state `|ψ⟩⟨ψ|`.
pub fn random_pure(dim: usize, seed: u64) -> Result<DensityMatrix> {
    let mut r = rng(seed);
    let psi: Vec<C64> = (0..dim).map(|_| gaussian(&mut r)).collect();
    DensityMatrix::from_pure(&psi)
}

/// Random state on `C^{d1} ⊗ C^{d2}` of the given rank.
pub fn random_bipartite(d1: usize, d2: usize, rank: usize, seed: u64) -> Result<BipartiteState> {
    BipartiteState::new(random_density(d1 * d2, rank, seed)?, d1, d2)
}

/// `Σᵢ pᵢ |i⟩⟨i| ⊗ ρᵢ` in the computational basis of the first factor.
pub fn classical_quantum(probs: &[f64], states2: &[DensityMatrix]) -> Result<BipartiteState> {
    if probs.is_empty() || probs.len() != states2.len() {
        return Err(Error::DimensionMismatch {
            expected: probs.len(),
            found: states2.len(),
        });
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-12 || probs.iter().any(|&p| !(p >= 0.0)) {
        return Err(Error::ProbsNotNormalized { sum });
    }
    let d1 = probs.len();
    let d2 = states2[0].dim();
    let mut m = ComplexMatrix::zeros(d1 * d2);
    for (i, (&p, rho)) in probs.iter().zip(states2).enumerate() {
        if rho.dim() != d2 {
            return Err(Error::DimensionMismatch {
                expected: d2,
                found: rho.dim(),
            });
        }
        let mut proj = alloc::vec![0.0; d1];
        proj[i] = p;
        m = &m + &tensor(&ComplexMatrix::from_diagonal(&proj), rho.matrix());
    }
    BipartiteState::new(DensityMatrix::new(m)?, d1, d2)
}

/// Classical-quantum state with random weights, random full-rank
/// conditional states and a Haar-random measurement basis on the first
/// factor.
pub fn random_classical_quantum(d1: usize, d2: usize, seed: u64) -> Result<BipartiteState> {
    let mut r = rng(seed);
    let raw: Vec<f64> = (0..d1).map(|_| r.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
    // exact normalization for the validation in `classical_quantum`
    let rest: f64 = probs[1..].iter().sum();
    probs[0] = 1.0 - rest;
    let states: Vec<DensityMatrix> = (0..d1).map(|_| sample_density(&mut r, d2, d2)).collect::<Result<_>>()?;
    let cq = classical_quantum(&probs, &states)?;
    let u1 = haar_unitary(&mut r, d1);
    cq.local_unitary(&u1, &ComplexMatrix::identity(d2))
}

/// A channel `d → d` in Kraus form.
#[derive(Clone, Debug)]
pub struct Channel {
    kraus: Vec<ComplexMatrix>,
}

/// Maximum deviation of `Σ K†K` from the identity.
pub const TRACE_PRESERVING_TOL: f64 = 1e-10;

impl Channel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let d = kraus.first().ok_or(Error::Empty)?.dim();
        let mut sum = ComplexMatrix::zeros(d);
        for k in &kraus {
            if k.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: k.dim(),
                });
            }
            sum = &sum + &(&k.adjoint() * k);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(d));
        if deviation > TRACE_PRESERVING_TOL {
            return Err(Error::NotTracePreserving { deviation });
        }
        Ok(Self { kraus })
    }

    pub fn identity(d: usize) -> Self {
        Self {
            kraus: alloc::vec![ComplexMatrix::identity(d)],
        }
    }

    /// `ρ ↦ Tr(ρ) I/d`, with Kraus operators `|i⟩⟨j|/√d`.
    pub fn fully_depolarizing(d: usize) -> Self {
        let s = 1.0 / (d as f64).sqrt();
        let kraus = (0..d * d)
            .map(|k| {
                let (i, j) = (k / d, k % d);
                ComplexMatrix::from_fn(d, |a, b| if a == i && b == j { c(s, 0.0) } else { c(0.0, 0.0) })
            })
            .collect();
        Self { kraus }
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim());
        for k in &self.kraus {
            out = &out + &(&(k * rho.matrix()) * &k.adjoint());
        }
        DensityMatrix::new(out)
    }
}

/// Random channel through a Stinespring dilation: the first `d` columns of a
/// Haar unitary on `C^d ⊗ C^{kraus_count}` form an isometry `V`, and the
/// Kraus operators are its `d x d` row blocks.
pub fn sample_channel(rng: &mut Rng, d: usize, kraus_count: usize) -> Result<Channel> {
    if d == 0 || kraus_count == 0 {
        return Err(Error::Empty);
    }
    let u = haar_unitary(rng, d * kraus_count);
    let m = u.as_dmatrix();
    let kraus = (0..kraus_count)
        .map(|k| ComplexMatrix::from_fn(d, |i, j| m[(k * d + i, j)]))
        .collect();
    Channel::new(kraus)
}

pub fn random_channel(d: usize, kraus_count: usize, seed: u64) -> Result<Channel> {
    sample_channel(&mut rng(seed), d, kraus_count)
}

/// `(1 ⊗ Φ) ρ`.
pub fn apply_channel_on_2(s: &BipartiteState, ch: &Channel) -> Result<BipartiteState> {
    if ch.dim() != s.d2() {
        return Err(Error::DimensionMismatch {
            expected: s.d2(),
            found: ch.dim(),
        });
    }
    let id = ComplexMatrix::identity(s.d1());
    let rho = s.state().matrix();
    let mut out = ComplexMatrix::zeros(rho.dim());
    for k in ch.kraus_ops() {
        let lifted = tensor(&id, k);
        out = &out + &(&(&lifted * rho) * &lifted.adjoint());
    }
    BipartiteState::new(DensityMatrix::new(out)?, s.d1(), s.d2())
}
