//! Run configuration: grid, state, constants, and output disposition.
//! Everything is validated here before any computation starts, and every
//! diagnostic names the offending field.

use std::path::PathBuf;

use qfisher_core::{make_grid, Grid1D, StateSpec};

pub const DEFAULT_GRID: &str = "-8:8:2049";
pub const GRID_ENV_VAR: &str = "QFISHER_DEFAULT_GRID";

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub grid: Grid1D,
    pub hbar: f64,
    pub state: StateSpec,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
    pub seed: u64,
}

/// A configuration problem; maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn parse_grid(text: &str) -> Result<Grid1D, ConfigError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(ConfigError(format!(
            "--grid: expected MIN:MAX:N, got `{text}`"
        )));
    }
    let x_min: f64 = parts[0]
        .parse()
        .map_err(|_| ConfigError(format!("--grid: MIN `{}` is not a number", parts[0])))?;
    let x_max: f64 = parts[1]
        .parse()
        .map_err(|_| ConfigError(format!("--grid: MAX `{}` is not a number", parts[1])))?;
    let n_points: usize = parts[2]
        .parse()
        .map_err(|_| ConfigError(format!("--grid: N `{}` is not a positive integer", parts[2])))?;
    make_grid(x_min, x_max, n_points).map_err(|e| ConfigError(format!("--grid: {e}")))
}

pub fn resolve(
    grid: Option<&str>,
    hbar: Option<f64>,
    state: Option<&str>,
    format: Option<OutputFormat>,
    out: Option<PathBuf>,
    seed: Option<u64>,
) -> Result<RunConfig, ConfigError> {
    let env_grid = std::env::var(GRID_ENV_VAR).ok();
    let grid_text = grid
        .map(str::to_string)
        .or(env_grid)
        .unwrap_or_else(|| DEFAULT_GRID.to_string());
    let grid = parse_grid(&grid_text)?;

    let hbar = hbar.unwrap_or(1.0);
    if !(hbar.is_finite() && hbar > 0.0) {
        return Err(ConfigError(format!(
            "--hbar: must be positive and finite, got {hbar}"
        )));
    }

    let state_text = state.unwrap_or("gaussian:1");
    let state = StateSpec::parse(state_text)
        .map_err(|e| ConfigError(format!("--state: {e}")))?;

    Ok(RunConfig {
        grid,
        hbar,
        state,
        format: format.unwrap_or(OutputFormat::Csv),
        out,
        seed: seed.unwrap_or(0),
    })
}

/// Parses a comma-separated list of reals for `--deltas`/`--amplitudes`.
pub fn parse_list(flag: &str, text: &str) -> Result<Vec<f64>, ConfigError> {
    text.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<f64>()
                .map_err(|_| ConfigError(format!("{flag}: `{piece}` is not a number")))
        })
        .collect()
}
