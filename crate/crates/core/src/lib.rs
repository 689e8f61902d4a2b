//! Numerical laboratory for Fisher information, Kerridge/Kullback
//! divergence, and uncertainty products of one-dimensional states.
//!
//! The crate verifies two statements empirically:
//!
//! * the information bound `Var(T) >= (d<T>/dtheta)^2 / (n I)` for
//!   location families, via seeded Monte Carlo estimator experiments;
//! * the uncertainty relation `dx * dp >= hbar/2`, reached through the
//!   Fisher information of position and the identity
//!   `hbar^2 I(psi) = 4 <p^2>` for real states.
//!
//! Layout mirrors the pipeline: [`grid`] holds quadrature and finite
//! differences, [`state`] wavefunctions/densities and the test corpus,
//! [`fisher`] the three information routes, [`divergence`] the shifted
//! Kullback scan, [`moments`] the uncertainty reports, and [`cramer_rao`]
//! the estimator experiments. [`selfcheck`] bundles the invariant suite
//! used by the CLI's `--self-check`.

pub mod cramer_rao;
pub mod divergence;
pub mod error;
pub mod fisher;
pub mod grid;
pub mod moments;
pub mod selfcheck;
pub mod state;

pub use num_complex::Complex64;

pub use cramer_rao::{
    apply_estimator, bias_slope, draw_samples, mix_seed, run_experiment, run_experiment_full,
    CdfTable, EstimatorReport, EstimatorSpec,
};
pub use divergence::{
    curvature_fit, default_scan_deltas, kerridge_inaccuracy, kl_quadratic_scan, KLScanResult,
};
pub use error::{Error, Result};
pub use fisher::{
    fisher_amplitude, fisher_location, fisher_parametric, momentum_identity_check, FisherMethod,
    FisherResult, MomentumIdentity,
};
pub use grid::{make_grid, ComplexField, Grid1D, RealField};
pub use moments::{
    gaussian_minimality_probe, momentum_mean, momentum_variance, perturbed_uncertainty_products,
    position_mean, position_variance, uncertainty_report, UncertaintyReport,
};
pub use selfcheck::{run_all as run_self_check, CheckOutcome};
pub use state::{
    corpus, density_of, normalize, shift, standard_corpus, standard_corpus_grid, DensityGrid,
    LocationFamily, StateSpec, WavefunctionGrid,
};
