//! Position and momentum moments, the uncertainty product against its
//! `hbar/2` bound, and the perturbation probe demonstrating that the
//! Gaussian packet is the local minimum of the product.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fisher::fisher_amplitude;
use crate::grid::{ComplexField, Grid1D, RealField};
use crate::state::{corpus, density_of, normalize, StateSpec, WavefunctionGrid};

/// Slack allowed on `product >= hbar/2` before the report is rejected.
pub const BOUND_SLACK: f64 = 1e-9;

/// Gap below which the product is flagged as saturating the bound.
pub const SATURATION_TOL: f64 = 1e-6;

/// Largest |<p>| accepted by the momentum variance (the zero-mean
/// assumption; real states satisfy it identically).
pub const MEAN_MOMENTUM_TOL: f64 = 1e-8;

/// Smallest admissible position variance.
pub const VARIANCE_FLOOR: f64 = 1e-14;

/// Position and momentum spreads of one state with the `hbar/2` bound and
/// the amplitude-route Fisher value for the information-bound cross-check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertaintyReport {
    pub delta_x: f64,
    pub delta_p: f64,
    pub product: f64,
    pub bound: f64,
    pub fisher_value: f64,
    pub hbar: f64,
    pub saturates_bound: bool,
}

/// `integral x |psi|^2 dx`.
pub fn position_mean(psi: &WavefunctionGrid) -> Result<f64> {
    let p = density_of(psi);
    let integrand = RealField::new(
        psi.grid(),
        psi.grid()
            .positions()
            .zip(p.p())
            .map(|(x, &pi)| x * pi)
            .collect(),
    )?;
    integrand.integrate()
}

/// Central second moment `integral (x - <x>)^2 |psi|^2 dx`. The mean is
/// subtracted, so off-center states are handled rather than rejected.
pub fn position_variance(psi: &WavefunctionGrid) -> Result<f64> {
    let mean = position_mean(psi)?;
    let p = density_of(psi);
    let integrand = RealField::new(
        psi.grid(),
        psi.grid()
            .positions()
            .zip(p.p())
            .map(|(x, &pi)| (x - mean) * (x - mean) * pi)
            .collect(),
    )?;
    let variance = integrand.integrate()?;
    if variance < VARIANCE_FLOOR {
        return Err(Error::DegenerateVariance { variance });
    }
    Ok(variance)
}

/// `hbar * Im integral conj(psi) psi' dx`; exactly zero for real states.
pub fn momentum_mean(psi: &WavefunctionGrid, hbar: f64) -> Result<f64> {
    let dpsi = psi.as_complex_field().derivative()?;
    let integrand = RealField::new(
        psi.grid(),
        psi.psi()
            .iter()
            .zip(dpsi.values())
            .map(|(c, d)| (c.conj() * d).im)
            .collect(),
    )?;
    Ok(hbar * integrand.integrate()?)
}

/// `hbar^2 integral |psi'|^2 dx`, requiring `|<p>| < 1e-8` so the second
/// moment coincides with the variance.
pub fn momentum_variance(psi: &WavefunctionGrid, hbar: f64) -> Result<f64> {
    let mean = momentum_mean(psi, hbar)?;
    if mean.abs() >= MEAN_MOMENTUM_TOL {
        return Err(Error::NonzeroMeanMomentum { mean });
    }
    let dpsi = psi.as_complex_field().derivative()?;
    let integrand = RealField::new(
        psi.grid(),
        dpsi.values().iter().map(|d| d.norm_sqr()).collect(),
    )?;
    Ok(hbar * hbar * integrand.integrate()?)
}

/// Builds the uncertainty report and enforces `product >= hbar/2` up to
/// [`BOUND_SLACK`].
pub fn uncertainty_report(psi: &WavefunctionGrid, hbar: f64) -> Result<UncertaintyReport> {
    let vx = position_variance(psi)?;
    let vp = momentum_variance(psi, hbar)?;
    let delta_x = vx.sqrt();
    let delta_p = vp.sqrt();
    let product = delta_x * delta_p;
    let bound = hbar / 2.0;
    if product < bound - BOUND_SLACK {
        return Err(Error::BoundViolation { product, bound });
    }
    let fisher_value = fisher_amplitude(psi)?.value;
    Ok(UncertaintyReport {
        delta_x,
        delta_p,
        product,
        bound,
        fisher_value,
        hbar,
        saturates_bound: product - bound < SATURATION_TOL,
    })
}

/// The fixed even perturbation profile `h(x) = x^2 exp(-x^2 / (8 dx^2))`
/// used by [`gaussian_minimality_probe`].
pub fn perturbation_shape(grid: Grid1D, delta_x: f64) -> RealField {
    let inv = 1.0 / (8.0 * delta_x * delta_x);
    RealField::from_fn(grid, move |x| x * x * (-x * x * inv).exp())
}

/// Uncertainty products of `psi_a ~ gaussian(delta_x) * (1 + a h(x))`
/// over the given amplitudes, with the documented shape `h`. The list
/// must contain 0; the unperturbed product is the reference minimum.
pub fn gaussian_minimality_probe(
    grid: Grid1D,
    delta_x: f64,
    amplitudes: &[f64],
    hbar: f64,
) -> Result<Vec<(f64, f64)>> {
    let shape = perturbation_shape(grid, delta_x);
    perturbed_uncertainty_products(grid, delta_x, &shape, amplitudes, hbar)
}

/// Same probe with a caller-supplied perturbation profile.
pub fn perturbed_uncertainty_products(
    grid: Grid1D,
    delta_x: f64,
    shape: &RealField,
    amplitudes: &[f64],
    hbar: f64,
) -> Result<Vec<(f64, f64)>> {
    if !amplitudes.contains(&0.0) {
        return Err(Error::MissingZeroAmplitude);
    }
    if shape.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let base = corpus(&StateSpec::Gaussian { delta_x }, grid)?;
    let mut products = Vec::with_capacity(amplitudes.len());
    for &a in amplitudes {
        let product = perturbed_product(&base, shape, a, hbar)
            .map_err(|e| Error::PerturbedState {
                amplitude: a,
                reason: e.to_string(),
            })?;
        products.push((a, product));
    }
    Ok(products)
}

fn perturbed_product(
    base: &WavefunctionGrid,
    shape: &RealField,
    amplitude: f64,
    hbar: f64,
) -> Result<f64> {
    let factors: Vec<f64> = shape.values().iter().map(|h| 1.0 + amplitude * h).collect();
    if let Some(index) = factors.iter().position(|&f| f < 0.0) {
        return Err(Error::NegativeDensity {
            index,
            value: factors[index],
        });
    }
    let raw = ComplexField::new(
        base.grid(),
        base.psi()
            .iter()
            .zip(&factors)
            .map(|(c, &f)| Complex64::new(c.re * f, c.im * f))
            .collect(),
    )?;
    let psi = normalize(&raw)?;
    Ok(uncertainty_report(&psi, hbar)?.product)
}
