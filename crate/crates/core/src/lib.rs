//! Metric adjusted skew information and the metric adjusted local quantum
//! uncertainty (f-LQU) for finite dimensional quantum systems.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! - [`matrix`]: dense complex Hermitian algebra, density matrices, bipartite
//!   states, tensor products, partial traces and Kubo–Ando matrix means.
//! - [`functions`]: the class of normalized symmetric operator monotone
//!   functions, the regular/non-regular transform, the weight-function
//!   representation and the majorization lattice.
//! - [`superop`]: the superoperators `m_f(L_ρ, R_ρ)`, `c_f(L_ρ, R_ρ)` and the
//!   commutator kernel evaluated in the eigenbasis of `ρ`.
//! - [`measures`]: f-covariance, monotone metrics (quantum Fisher information)
//!   and metric adjusted skew information.
//! - [`lqu`]: minimization of the skew information over local observables
//!   with a fixed spectrum, with LQU and interferometric power as special cases.
//! - [`states`]: seeded generators for states, unitaries and channels.
//!
//! All randomness goes through [`states::Rng`], ChaCha8 from `rand_chacha`
//! seeded with `SeedableRng::seed_from_u64`.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod error;
pub mod functions;
pub mod lqu;
pub mod matrix;
pub mod measures;
mod quadrature;
pub mod states;
pub mod superop;

pub use error::{Error, Result};
pub use functions::{FunctionSpec, MonotoneFunction, SpectrumLambda, Weight};
pub use lqu::{LquResult, OptimizerConfig};
pub use matrix::{BipartiteState, ComplexMatrix, DensityMatrix, Observable, C64};
pub use measures::{EvaluationPath, MeasureReport};
