//! Subcommand implementations and the exit-code contract:
//! 0 success, 1 numerical validation failure, 2 usage/config error.

use std::io::Write;
use std::path::PathBuf;

use qfisher_core as core;
use qfisher_core::{
    corpus, default_scan_deltas, density_of, fisher_amplitude, fisher_location,
    gaussian_minimality_probe, kl_quadratic_scan, momentum_identity_check, run_experiment_full,
    uncertainty_report, EstimatorSpec, LocationFamily, StateSpec, WavefunctionGrid,
};

use crate::config::{ConfigError, OutputFormat, RunConfig};
use crate::output;

pub const EXIT_OK: u8 = 0;
pub const EXIT_NUMERICAL: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;

pub enum CmdError {
    Config(String),
    Numerical(String),
}

impl From<ConfigError> for CmdError {
    fn from(e: ConfigError) -> Self {
        CmdError::Config(e.0)
    }
}

impl From<core::Error> for CmdError {
    fn from(e: core::Error) -> Self {
        CmdError::Numerical(e.to_string())
    }
}

impl CmdError {
    pub fn report(&self) -> u8 {
        match self {
            CmdError::Config(msg) => {
                eprintln!("error (config): {msg}");
                EXIT_CONFIG
            }
            CmdError::Numerical(msg) => {
                eprintln!("error (numerical): {msg}");
                EXIT_NUMERICAL
            }
        }
    }
}

/// Builds the configured state; failures here are configuration errors
/// because the state is part of the run configuration.
fn build_state(config: &RunConfig) -> Result<WavefunctionGrid, CmdError> {
    let psi = corpus(&config.state, config.grid)
        .map_err(|e| CmdError::Config(format!("--state: {e}")))?;
    for warning in psi.endpoint_warnings() {
        eprintln!("warning: {warning}");
    }
    Ok(psi)
}

fn emit(out: &Option<PathBuf>, payload: &str) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| CmdError::Numerical(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{payload}");
            std::io::stdout()
                .flush()
                .map_err(|e| CmdError::Numerical(format!("cannot write stdout: {e}")))
        }
    }
}

pub fn cmd_fisher(config: &RunConfig) -> Result<u8, CmdError> {
    let psi = build_state(config)?;
    let location = fisher_location(&density_of(&psi))?;
    let amplitude = fisher_amplitude(&psi)?;
    let identity = momentum_identity_check(&psi, config.hbar)?;
    let payload = match config.format {
        OutputFormat::Csv => output::fisher_report_csv(&location, &amplitude, &identity),
        OutputFormat::Json => output::fisher_report_json(
            config.grid,
            &config.state.label(),
            config.hbar,
            &location,
            &amplitude,
            &identity,
        ),
    };
    emit(&config.out, &payload)?;
    Ok(EXIT_OK)
}

pub fn cmd_kl_scan(config: &RunConfig, deltas: Option<Vec<f64>>) -> Result<u8, CmdError> {
    let psi = build_state(config)?;
    let deltas = match deltas {
        Some(values) => {
            for &delta in &values {
                config.grid.lattice_steps(delta).map_err(|e| {
                    CmdError::Config(format!("--deltas: {e}"))
                })?;
            }
            values
        }
        None => default_scan_deltas(&config.grid),
    };
    let p = density_of(&psi);
    let scan = kl_quadratic_scan(&p, &deltas)?;
    let payload = match config.format {
        OutputFormat::Csv => output::scan_csv(&scan),
        OutputFormat::Json => {
            let fisher = fisher_location(&p)?.value;
            output::scan_json(
                config.grid,
                &config.state.label(),
                config.hbar,
                fisher,
                &scan,
            )
        }
    };
    emit(&config.out, &payload)?;
    Ok(EXIT_OK)
}

pub fn cmd_uncertainty(config: &RunConfig) -> Result<u8, CmdError> {
    let psi = build_state(config)?;
    // uncertainty_report rejects products below bound - 1e-9, so a
    // successfully emitted report implies exit 0
    let report = uncertainty_report(&psi, config.hbar)?;
    let payload = match config.format {
        OutputFormat::Csv => output::uncertainty_csv(&report),
        OutputFormat::Json => {
            output::uncertainty_json(config.grid, &config.state.label(), &report)
        }
    };
    emit(&config.out, &payload)?;
    Ok(EXIT_OK)
}

pub fn cmd_gaussian_min(
    config: &RunConfig,
    amplitudes: Option<Vec<f64>>,
) -> Result<u8, CmdError> {
    let delta_x = match config.state {
        StateSpec::Gaussian { delta_x } => delta_x,
        _ => {
            return Err(CmdError::Config(
                "--state: gaussian-min requires a gaussian:DX state".to_string(),
            ))
        }
    };
    let amplitudes = amplitudes.unwrap_or_else(|| vec![-0.2, -0.1, 0.0, 0.1, 0.2]);
    let rows = gaussian_minimality_probe(config.grid, delta_x, &amplitudes, config.hbar)?;
    let payload = match config.format {
        OutputFormat::Csv => output::probe_csv(&rows),
        OutputFormat::Json => output::probe_json(
            config.grid,
            &config.state.label(),
            config.hbar,
            &rows,
        ),
    };
    emit(&config.out, &payload)?;
    let at_zero = rows
        .iter()
        .find(|(a, _)| *a == 0.0)
        .map(|(_, p)| *p)
        .expect("probe requires amplitude 0");
    let minimum_at_zero = rows.iter().all(|(_, p)| *p >= at_zero);
    Ok(if minimum_at_zero {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

pub fn cmd_cr_sim(
    config: &RunConfig,
    estimator: &str,
    n: usize,
    trials: usize,
    trials_csv: Option<PathBuf>,
) -> Result<u8, CmdError> {
    let spec = EstimatorSpec::parse(estimator)
        .map_err(|e| CmdError::Config(format!("--estimator: {e}")))?;
    if n == 0 {
        return Err(CmdError::Config("--n: must be at least 1".to_string()));
    }
    let psi = build_state(config)?;
    let family = LocationFamily::new(density_of(&psi), 0.0)?;
    let (report, estimates) = run_experiment_full(&spec, &family, n, trials, config.seed)?;
    // the report is always JSON; --format applies to the other commands
    let payload = output::estimator_report_json(
        config.grid,
        &config.state.label(),
        config.hbar,
        &spec.label(),
        config.seed,
        &report,
    );
    emit(&config.out, &payload)?;
    if let Some(path) = trials_csv {
        std::fs::write(&path, output::trials_csv(&estimates))
            .map_err(|e| CmdError::Numerical(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if report.bound_satisfied {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    })
}

pub fn cmd_self_check() -> u8 {
    let outcomes = core::run_self_check();
    let mut all_passed = true;
    for outcome in &outcomes {
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status}  {:<28} {}", outcome.name, outcome.detail);
        all_passed &= outcome.passed;
    }
    let (passed, total) = (
        outcomes.iter().filter(|o| o.passed).count(),
        outcomes.len(),
    );
    println!("self-check: {passed}/{total} checks passed");
    if all_passed {
        EXIT_OK
    } else {
        EXIT_NUMERICAL
    }
}
