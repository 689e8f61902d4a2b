//! `qfisher` - Fisher information, divergence scans, uncertainty
//! products, and estimator-bound experiments for 1-D states.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::CmdError;
use config::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "qfisher", version, about = "Fisher information and uncertainty-relation numerics for one-dimensional states")]
struct Cli {
    /// Grid as MIN:MAX:N (N odd, >= 17). Defaults to $QFISHER_DEFAULT_GRID
    /// or -8:8:2049.
    #[arg(long, global = true, allow_hyphen_values = true)]
    grid: Option<String>,

    /// Reduced Planck constant (default 1.0).
    #[arg(long, global = true)]
    hbar: Option<f64>,

    /// Corpus state as NAME:P1[:P2]; one of gaussian:DX,
    /// double_gaussian:SEP:DX, cosine_window:W, sech:S (default gaussian:1).
    #[arg(long, global = true)]
    state: Option<String>,

    /// Output format (default csv; cr-sim always emits JSON).
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for Monte Carlo commands (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Run the full invariant suite and exit (0 = all checks passed).
    #[arg(long)]
    self_check: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fisher information via both routes plus the momentum identity.
    Fisher,
    /// Kullback divergence against the quadratic Fisher approximation,
    /// one row per shift.
    KlScan {
        /// Comma-separated shifts, each an integer multiple of the grid
        /// spacing. Defaults to +-{1,2,4,8,16} spacings.
        #[arg(long, allow_hyphen_values = true)]
        deltas: Option<String>,
    },
    /// Position/momentum spreads and the uncertainty product.
    Uncertainty,
    /// Uncertainty products of perturbed Gaussian packets; exit 0 iff
    /// the minimum sits at amplitude 0.
    GaussianMin {
        /// Comma-separated perturbation amplitudes including 0.
        /// Defaults to -0.2,-0.1,0,0.1,0.2.
        #[arg(long, allow_hyphen_values = true)]
        amplitudes: Option<String>,
    },
    /// Monte Carlo estimator experiment against the information bound;
    /// emits one JSON report, exit 0 iff the bound held.
    CrSim {
        /// mean, median, or shrunk:C with C in (0,1].
        #[arg(long, default_value = "mean")]
        estimator: String,
        /// Samples per trial.
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Monte Carlo trials (minimum 1000).
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        /// Also dump one CSV row per trial to this file.
        #[arg(long)]
        trials_csv: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<u8, CmdError> {
    if cli.self_check {
        return Ok(commands::cmd_self_check());
    }
    let Some(command) = cli.command else {
        return Err(CmdError::Config(
            "a subcommand (or --self-check) is required; see --help".to_string(),
        ));
    };
    let config = config::resolve(
        cli.grid.as_deref(),
        cli.hbar,
        cli.state.as_deref(),
        cli.format,
        cli.out,
        cli.seed,
    )?;
    match command {
        Command::Fisher => commands::cmd_fisher(&config),
        Command::KlScan { deltas } => {
            let deltas = deltas
                .map(|text| config::parse_list("--deltas", &text))
                .transpose()?;
            commands::cmd_kl_scan(&config, deltas)
        }
        Command::Uncertainty => commands::cmd_uncertainty(&config),
        Command::GaussianMin { amplitudes } => {
            let amplitudes = amplitudes
                .map(|text| config::parse_list("--amplitudes", &text))
                .transpose()?;
            commands::cmd_gaussian_min(&config, amplitudes)
        }
        Command::CrSim {
            estimator,
            n,
            trials,
            trials_csv,
        } => commands::cmd_cr_sim(&config, &estimator, n, trials, trials_csv),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => ExitCode::from(e.report()),
    }
}
