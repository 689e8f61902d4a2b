//! Fisher information functionals: the log-derivative form for densities,
//! the amplitude-derivative form for wavefunctions, and the
//! parametric-difference form for location families.
//!
//! The three routes compute the same quantity for a location family and
//! are checked against each other in the test suites; they deliberately
//! differentiate different objects (density, modulus, family parameter)
//! so agreement is meaningful.

use crate::error::{Error, Result};
use crate::grid::{Kahan, RealField};
use crate::moments;
use crate::state::{DensityGrid, LocationFamily, WavefunctionGrid};

/// Low-density cutoff: samples with `p < DENSITY_CUTOFF` are excluded
/// from log-derivative integrands and their probability mass is
/// accumulated into `excluded_mass` for auditing.
pub const DENSITY_CUTOFF: f64 = 1e-13;

/// Largest excluded probability mass accepted before the density is
/// considered too rough or truncated for a reliable value.
pub const EXCLUDED_MASS_LIMIT: f64 = 1e-8;

/// Maximum imaginary amplitude for a state treated as real.
pub const REAL_STATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FisherMethod {
    LogDerivative,
    AmplitudeDerivative,
    ParametricDifference,
}

impl FisherMethod {
    pub fn label(&self) -> &'static str {
        match self {
            FisherMethod::LogDerivative => "log_derivative",
            FisherMethod::AmplitudeDerivative => "amplitude_derivative",
            FisherMethod::ParametricDifference => "parametric_difference",
        }
    }
}

/// Fisher information value (1/position^2 units) with its computation
/// route and the probability mass skipped by the low-density cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FisherResult {
    pub value: f64,
    pub method: FisherMethod,
    pub excluded_mass: f64,
}

/// Quadrature of `[d/dx ln p(x)]^2 p(x)`, evaluated as `(p')^2 / p` with
/// the grid derivative of `p`. The rearrangement is exact and stays
/// finite where compactly supported densities hit exact zeros.
pub fn fisher_location(p: &DensityGrid) -> Result<FisherResult> {
    let grid = p.grid();
    let dp = p.as_field().derivative()?;
    let mut value = Kahan::default();
    let mut excluded = Kahan::default();
    for (i, (&pi, &di)) in p.p().iter().zip(dp.values()).enumerate() {
        let w = grid.simpson_weight(i);
        if pi < DENSITY_CUTOFF {
            excluded.add(w * pi);
        } else {
            value.add(w * di * di / pi);
        }
    }
    let excluded_mass = excluded.total();
    if excluded_mass > EXCLUDED_MASS_LIMIT {
        return Err(Error::ExcludedMass {
            mass: excluded_mass,
            limit: EXCLUDED_MASS_LIMIT,
        });
    }
    Ok(FisherResult {
        value: value.total(),
        method: FisherMethod::LogDerivative,
        excluded_mass,
    })
}

/// `4 * integral (d|psi|/dx)^2 dx`. The integrand vanishes where `psi`
/// does, so no low-density cutoff is needed.
pub fn fisher_amplitude(psi: &WavefunctionGrid) -> Result<FisherResult> {
    let damp = psi.amplitude().derivative()?;
    let squared = RealField::new(
        psi.grid(),
        damp.values().iter().map(|d| d * d).collect(),
    )?;
    Ok(FisherResult {
        value: 4.0 * squared.integrate()?,
        method: FisherMethod::AmplitudeDerivative,
        excluded_mass: 0.0,
    })
}

/// Central-difference estimate of the parametric Fisher information
/// `integral (d ln p_theta / d theta)^2 p_theta dx` with a theta step of
/// one grid spacing. Neighbors beyond the grid count as zero density.
pub fn fisher_parametric(family: &LocationFamily, theta: f64) -> Result<FisherResult> {
    let member = family.member(theta)?;
    let grid = member.grid();
    let q = member.p();
    let n = q.len();
    let inv_two_h = 1.0 / (2.0 * grid.spacing());
    let mut value = Kahan::default();
    let mut excluded = Kahan::default();
    for i in 0..n {
        let w = grid.simpson_weight(i);
        if q[i] < DENSITY_CUTOFF {
            excluded.add(w * q[i]);
            continue;
        }
        let prev = if i > 0 { q[i - 1] } else { 0.0 };
        let next = if i + 1 < n { q[i + 1] } else { 0.0 };
        let score = (prev - next) * inv_two_h / q[i];
        value.add(w * score * score * q[i]);
    }
    let excluded_mass = excluded.total();
    if excluded_mass > EXCLUDED_MASS_LIMIT {
        return Err(Error::ExcludedMass {
            mass: excluded_mass,
            limit: EXCLUDED_MASS_LIMIT,
        });
    }
    Ok(FisherResult {
        value: value.total(),
        method: FisherMethod::ParametricDifference,
        excluded_mass,
    })
}

/// Both sides of `hbar^2 I(psi) = 4 <p^2>` together with their relative
/// gap. The identity holds as an equality only for real states, so
/// complex input is rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub relative_gap: f64,
}

pub fn momentum_identity_check(psi: &WavefunctionGrid, hbar: f64) -> Result<MomentumIdentity> {
    let max_imag = psi.max_imag();
    if max_imag >= REAL_STATE_TOL {
        return Err(Error::ComplexState { max_imag });
    }
    let lhs = hbar * hbar * fisher_amplitude(psi)?.value;
    let rhs = 4.0 * moments::momentum_variance(psi, hbar)?;
    let relative_gap = (lhs - rhs).abs() / rhs;
    Ok(MomentumIdentity {
        lhs,
        rhs,
        relative_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;
    use crate::state::{corpus, density_of, standard_corpus_grid, StateSpec};
    use approx::assert_relative_eq;
    use num_complex::Complex64;

    fn gaussian(delta_x: f64, x_half: f64, n: usize) -> WavefunctionGrid {
        let grid = make_grid(-x_half, x_half, n).unwrap();
        corpus(&StateSpec::Gaussian { delta_x }, grid).unwrap()
    }

    #[test]
    fn location_route_recovers_inverse_variance() {
        // closed form: I = 1/sigma^2 for a Gaussian location family
        let p1 = density_of(&gaussian(1.0, 8.0, 1025));
        let r1 = fisher_location(&p1).unwrap();
        assert_relative_eq!(r1.value, 1.0, epsilon = 1e-6);
        assert!(r1.excluded_mass >= 0.0 && r1.excluded_mass <= 1e-8);

        let p2 = density_of(&gaussian(2.0, 16.0, 2049));
        let r2 = fisher_location(&p2).unwrap();
        assert_relative_eq!(r2.value, 0.25, epsilon = 1e-6);
    }

    #[test]
    fn amplitude_route_recovers_inverse_variance() {
        let r1 = fisher_amplitude(&gaussian(1.0, 8.0, 1025)).unwrap();
        assert_relative_eq!(r1.value, 1.0, epsilon = 1e-6);
        let r2 = fisher_amplitude(&gaussian(2.0, 16.0, 2049)).unwrap();
        assert_relative_eq!(r2.value, 0.25, epsilon = 1e-6);
    }

    #[test]
    fn amplitude_route_ignores_global_phase() {
        let psi = gaussian(1.0, 8.0, 1025);
        let phase = Complex64::from_polar(1.0, 1.234);
        let rotated = WavefunctionGrid::new(
            psi.grid(),
            psi.psi().iter().map(|c| c * phase).collect(),
        )
        .unwrap();
        let a = fisher_amplitude(&psi).unwrap().value;
        let b = fisher_amplitude(&rotated).unwrap().value;
        assert!((a - b).abs() <= 1e-12 * a.abs());
    }

    #[test]
    fn parametric_route_matches_closed_form_and_is_shift_invariant() {
        let grid = make_grid(-12.0, 12.0, 1537).unwrap();
        let base = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap());
        let family = LocationFamily::new(base, 0.0).unwrap();
        let at_zero = fisher_parametric(&family, 0.0).unwrap();
        assert_relative_eq!(at_zero.value, 1.0, epsilon = 1e-4);
        let at_two = fisher_parametric(&family, 2.0).unwrap();
        assert!((at_zero.value - at_two.value).abs() < 1e-8);
    }

    #[test]
    fn parametric_route_obeys_the_scale_law() {
        let grid = make_grid(-24.0, 24.0, 2049).unwrap();
        let base = density_of(&corpus(&StateSpec::Gaussian { delta_x: 2.0 }, grid).unwrap());
        let family = LocationFamily::new(base, 0.0).unwrap();
        let r = fisher_parametric(&family, 0.0).unwrap();
        assert_relative_eq!(r.value, 0.25, epsilon = 1e-4);
    }

    #[test]
    fn plateau_density_agrees_across_routes() {
        // super-Gaussian: flat top, smooth fast-decaying shoulders
        let grid = make_grid(-8.0, 8.0, 2049).unwrap();
        let raw = crate::grid::ComplexField::from_fn(grid, |x| {
            Complex64::new((-0.5 * (x / 3.0).powi(8)).exp(), 0.0)
        });
        let psi = crate::state::normalize(&raw).unwrap();
        let amp = fisher_amplitude(&psi).unwrap().value;
        let loc = fisher_location(&density_of(&psi)).unwrap().value;
        assert!(
            ((amp - loc) / amp).abs() < 1e-6,
            "amp {amp} vs loc {loc}"
        );
    }

    #[test]
    fn momentum_identity_holds_for_gaussian() {
        let psi = gaussian(1.0, 8.0, 1025);
        let id = momentum_identity_check(&psi, 1.0).unwrap();
        assert_relative_eq!(id.lhs, 1.0, epsilon = 1e-6);
        assert_relative_eq!(id.rhs, 1.0, epsilon = 1e-6);
        assert!(id.relative_gap < 1e-6);

        let scaled = momentum_identity_check(&psi, 2.0).unwrap();
        assert_relative_eq!(scaled.lhs, 4.0, epsilon = 1e-5);
        assert_relative_eq!(scaled.rhs, 4.0, epsilon = 1e-5);
    }

    #[test]
    fn momentum_identity_holds_for_cosine_window() {
        let grid = standard_corpus_grid();
        let psi = corpus(&StateSpec::CosineWindow { width: 4.0 }, grid).unwrap();
        let id = momentum_identity_check(&psi, 1.0).unwrap();
        assert!(id.relative_gap < 1e-6, "gap {}", id.relative_gap);
    }

    #[test]
    fn momentum_identity_rejects_complex_states() {
        let psi = gaussian(1.0, 8.0, 1025);
        let boosted = WavefunctionGrid::new(
            psi.grid(),
            psi.grid()
                .positions()
                .zip(psi.psi())
                .map(|(x, c)| c * Complex64::from_polar(1.0, 0.5 * x))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            momentum_identity_check(&boosted, 1.0),
            Err(Error::ComplexState { .. })
        ));
    }

    #[test]
    fn results_are_nonnegative() {
        let grid = standard_corpus_grid();
        for (spec, psi) in crate::state::standard_corpus(grid).unwrap() {
            let amp = fisher_amplitude(&psi).unwrap();
            let loc = fisher_location(&density_of(&psi)).unwrap();
            assert!(amp.value >= 0.0 && loc.value >= 0.0, "{}", spec.label());
        }
    }
}
