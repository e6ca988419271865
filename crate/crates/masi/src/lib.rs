// `!(lo <= hi)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! State files, CSV reports and command implementations for the `masi`
//! binary. Computation lives in `masi-core`.

pub mod commands;
mod error;
pub mod files;

pub use error::{exit, CliError, Result};
