use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use masi::commands::{self, Family, GenKind};
use masi::{exit, Result};
use masi_core::OptimizerConfig;

/// Metric adjusted skew information and local quantum uncertainty.
///
/// Results are printed as CSV rows on stdout; diagnostics go to stderr.
/// Exit codes: 0 success, 2 invalid input, 3 non-regular function,
/// 4 spectrum length mismatch.
#[derive(Parser)]
#[command(name = "masi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Skew information of an observable: `label,f,value,residual`.
    Skew {
        state: PathBuf,
        /// Regular function, e.g. `wy`, `sld`, `wyd:0.3`.
        #[arg(long = "f")]
        f: String,
        /// Observable file on the full space or on the first factor.
        #[arg(long)]
        observable: PathBuf,
    },
    /// f-LQU of the first factor: `label,f,value,converged,spread`.
    Lqu {
        state: PathBuf,
        #[arg(long = "f", default_value = "wy")]
        f: String,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Interferometric power, i.e. `lqu --f sld`.
    Ip {
        state: PathBuf,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// f-LQU across a one-parameter family:
    /// `label,f,parameter,value,converged,spread`.
    Sweep {
        state: PathBuf,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Number of family members.
        #[arg(long)]
        grid: usize,
        /// Parameter range `lo,hi` (default: (0,1) interior points for wyd,
        /// [0,1] otherwise).
        #[arg(long, allow_hyphen_values = true)]
        range: Option<String>,
        #[command(flatten)]
        opt: OptArgs,
    },
    /// Writes a generated state file to stdout.
    Gen {
        #[arg(value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 2)]
        d1: usize,
        #[arg(long, default_value_t = 2)]
        d2: usize,
        /// Rank for `random` (default: full rank).
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        label: Option<String>,
    },
}

#[derive(Args)]
struct OptArgs {
    /// Comma-separated spectrum Λ of the local observable (default:
    /// 1, 2, …, d1 shifted to zero mean).
    #[arg(long, allow_hyphen_values = true)]
    spectrum: Option<String>,
    #[arg(long, default_value_t = 32)]
    starts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 500)]
    max_iters: usize,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

impl OptArgs {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            n_starts: self.starts,
            max_iters: self.max_iters,
            tol: self.tol,
            seed: self.seed,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    Wyd,
    Bridge,
    #[value(name = "variant_bridge")]
    VariantBridge,
}

#[derive(Copy, Clone, ValueEnum)]
enum KindArg {
    Random,
    Pure,
    Cq,
    Product,
    Bell,
    MaximallyMixed,
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Skew { state, f, observable } => commands::skew(&state, &f, &observable),
        Command::Lqu { state, f, opt } => commands::lqu(&state, &f, opt.spectrum.as_deref(), &opt.config()),
        Command::Ip { state, opt } => commands::lqu(&state, "sld", opt.spectrum.as_deref(), &opt.config()),
        Command::Sweep {
            state,
            family,
            grid,
            range,
            opt,
        } => {
            let family = match family {
                FamilyArg::Wyd => Family::Wyd,
                FamilyArg::Bridge => Family::Bridge,
                FamilyArg::VariantBridge => Family::VariantBridge,
            };
            let range = range.as_deref().map(commands::range).transpose()?;
            commands::sweep(&state, family, grid, range, opt.spectrum.as_deref(), &opt.config())
        }
        Command::Gen {
            kind,
            d1,
            d2,
            rank,
            seed,
            label,
        } => {
            let kind = match kind {
                KindArg::Random => GenKind::Random,
                KindArg::Pure => GenKind::Pure,
                KindArg::Cq => GenKind::Cq,
                KindArg::Product => GenKind::Product,
                KindArg::Bell => GenKind::Bell,
                KindArg::MaximallyMixed => GenKind::MaximallyMixed,
            };
            commands::gen(kind, d1, d2, rank, seed, label)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::from(exit::OK as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
