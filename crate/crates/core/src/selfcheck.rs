//! The invariant suite behind the CLI's `--self-check` flag: one cheap,
//! deterministic check per library-level invariant, each reporting the
//! measured figure next to its tolerance.

use crate::cramer_rao::{draw_samples, run_experiment, EstimatorSpec};
use crate::divergence::{curvature_fit, default_scan_deltas, kl_quadratic_scan};
use crate::fisher::{
    fisher_amplitude, fisher_location, fisher_parametric, momentum_identity_check,
};
use crate::grid::{make_grid, RealField};
use crate::moments::{gaussian_minimality_probe, uncertainty_report};
use crate::state::{
    corpus, density_of, standard_corpus, standard_corpus_grid, LocationFamily, StateSpec,
};

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn pass(name: &str, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed: true,
            detail,
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed: false,
            detail,
        }
    }

    fn measure(name: &str, measured: f64, tolerance: f64) -> Self {
        let detail = format!("measured {measured:.3e}, tolerance {tolerance:.1e}");
        if measured.is_finite() && measured <= tolerance {
            Self::pass(name, detail)
        } else {
            Self::fail(name, detail)
        }
    }
}

fn guard(name: &str, run: impl FnOnce() -> crate::error::Result<CheckOutcome>) -> CheckOutcome {
    run().unwrap_or_else(|e| CheckOutcome::fail(name, format!("error: {e}")))
}

/// Runs every check and returns the outcomes in a fixed order.
pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        quadrature_linearity(),
        quadrature_convergence(),
        derivative_convergence(),
        corpus_validity(),
        phase_invariance(),
        fisher_route_agreement(),
        fisher_scale_law(),
        fisher_shift_invariance(),
        momentum_identity(),
        kl_curvature(),
        gaussian_kl_residuals(),
        heisenberg_bound(),
        cramer_rao_link(),
        gaussian_minimality(),
        estimator_bound_quick(),
        sampling_determinism(),
    ]
}

fn quadrature_linearity() -> CheckOutcome {
    let name = "quadrature_linearity";
    guard(name, || {
        let grid = make_grid(-4.0, 4.0, 257)?;
        let f = RealField::from_fn(grid, |x| (-x * x).exp());
        let g = RealField::from_fn(grid, |x| x.cos());
        let (a, b) = (2.5, -1.25);
        let combined = RealField::new(
            grid,
            f.values()
                .iter()
                .zip(g.values())
                .map(|(fv, gv)| a * fv + b * gv)
                .collect(),
        )?;
        let lhs = combined.integrate()?;
        let rhs = a * f.integrate()? + b * g.integrate()?;
        let scale = (a * f.integrate()?).abs() + (b * g.integrate()?).abs();
        Ok(CheckOutcome::measure(name, (lhs - rhs).abs() / scale, 1e-12))
    })
}

fn quadrature_convergence() -> CheckOutcome {
    let name = "quadrature_convergence";
    guard(name, || {
        let exact = std::f64::consts::E - (-1.0f64).exp();
        let err = |n: usize| -> crate::error::Result<f64> {
            let grid = make_grid(-1.0, 1.0, n)?;
            Ok((RealField::from_fn(grid, |x| x.exp()).integrate()? - exact).abs())
        };
        let ratio = err(17)? / err(33)?;
        if ratio >= 8.0 {
            Ok(CheckOutcome::pass(name, format!("error ratio {ratio:.1}")))
        } else {
            Ok(CheckOutcome::fail(name, format!("error ratio {ratio:.1}")))
        }
    })
}

fn derivative_convergence() -> CheckOutcome {
    let name = "derivative_convergence";
    guard(name, || {
        let max_err = |n: usize| -> crate::error::Result<f64> {
            let grid = make_grid(-std::f64::consts::PI, std::f64::consts::PI, n)?;
            let d = RealField::from_fn(grid, |x| x.sin()).derivative()?;
            Ok((0..n)
                .map(|i| (d.values()[i] - grid.position(i).cos()).abs())
                .fold(0.0f64, f64::max))
        };
        let ratio = max_err(129)? / max_err(257)?;
        if ratio >= 8.0 {
            Ok(CheckOutcome::pass(name, format!("error ratio {ratio:.1}")))
        } else {
            Ok(CheckOutcome::fail(name, format!("error ratio {ratio:.1}")))
        }
    })
}

fn corpus_validity() -> CheckOutcome {
    let name = "corpus_validity";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst = 0.0f64;
        for (_, psi) in standard_corpus(grid)? {
            let norm = psi.as_complex_field().norm_squared().integrate()?;
            worst = worst.max((norm - 1.0).abs());
        }
        Ok(CheckOutcome::measure(name, worst, 1e-10))
    })
}

fn phase_invariance() -> CheckOutcome {
    let name = "phase_invariance";
    guard(name, || {
        use num_complex::Complex64;
        let grid = standard_corpus_grid();
        let phase = Complex64::from_polar(1.0, 0.7);
        let mut worst = 0.0f64;
        for (_, psi) in standard_corpus(grid)? {
            let rotated = crate::state::WavefunctionGrid::new(
                grid,
                psi.psi().iter().map(|c| c * phase).collect(),
            )?;
            let p0 = density_of(&psi);
            let p1 = density_of(&rotated);
            for (a, b) in p0.p().iter().zip(p1.p()) {
                worst = worst.max((a - b).abs());
            }
            let f0 = fisher_amplitude(&psi)?.value;
            let f1 = fisher_amplitude(&rotated)?.value;
            worst = worst.max((f0 - f1).abs() / f0);
        }
        Ok(CheckOutcome::measure(name, worst, 1e-12))
    })
}

fn fisher_route_agreement() -> CheckOutcome {
    let name = "fisher_route_agreement";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst = 0.0f64;
        for (_, psi) in standard_corpus(grid)? {
            let amp = fisher_amplitude(&psi)?.value;
            let loc = fisher_location(&density_of(&psi))?.value;
            worst = worst.max(((amp - loc) / amp).abs());
        }
        Ok(CheckOutcome::measure(name, worst, 1e-6))
    })
}

fn fisher_scale_law() -> CheckOutcome {
    let name = "fisher_scale_law";
    guard(name, || {
        let mut scaled = Vec::new();
        for sigma in [0.5, 1.0, 2.0, 4.0] {
            let grid = make_grid(-12.0 * sigma, 12.0 * sigma, 2049)?;
            let p = density_of(&corpus(&StateSpec::Gaussian { delta_x: sigma }, grid)?);
            scaled.push(fisher_location(&p)?.value * sigma * sigma);
        }
        let lo = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = scaled.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(CheckOutcome::measure(name, (hi - lo) / lo, 1e-5))
    })
}

fn fisher_shift_invariance() -> CheckOutcome {
    let name = "fisher_shift_invariance";
    guard(name, || {
        let grid = make_grid(-12.0, 12.0, 1537)?;
        let base = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid)?);
        let family = LocationFamily::new(base, 0.0)?;
        let values: Vec<f64> = [0.0, 0.5, 2.0, -2.0]
            .iter()
            .map(|&theta| fisher_parametric(&family, theta).map(|r| r.value))
            .collect::<crate::error::Result<_>>()?;
        let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Ok(CheckOutcome::measure(name, hi - lo, 1e-8))
    })
}

fn momentum_identity() -> CheckOutcome {
    let name = "momentum_identity";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst = 0.0f64;
        for (_, psi) in standard_corpus(grid)? {
            worst = worst.max(momentum_identity_check(&psi, 1.0)?.relative_gap);
        }
        Ok(CheckOutcome::measure(name, worst, 1e-6))
    })
}

fn kl_curvature() -> CheckOutcome {
    let name = "kl_curvature";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst = 0.0f64;
        for (_, psi) in standard_corpus(grid)? {
            let p = density_of(&psi);
            let scan = kl_quadratic_scan(&p, &default_scan_deltas(&grid))?;
            let fit = curvature_fit(&scan, 4).unwrap_or(f64::NAN);
            let half_info = 0.5 * fisher_location(&p)?.value;
            worst = worst.max(((fit - half_info) / half_info).abs());
        }
        Ok(CheckOutcome::measure(name, worst, 0.01))
    })
}

fn gaussian_kl_residuals() -> CheckOutcome {
    let name = "gaussian_kl_residuals";
    guard(name, || {
        let grid = standard_corpus_grid();
        let p = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid)?);
        let h = grid.spacing();
        let deltas: Vec<f64> = [-32.0, -16.0, -8.0, -4.0, -2.0, -1.0, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0]
            .iter()
            .map(|m| m * h)
            .collect();
        let scan = kl_quadratic_scan(&p, &deltas)?;
        let worst = scan.residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        Ok(CheckOutcome::measure(name, worst, 1e-8))
    })
}

fn heisenberg_bound() -> CheckOutcome {
    let name = "heisenberg_bound";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst_gap = f64::INFINITY;
        for (_, psi) in standard_corpus(grid)? {
            for hbar in [0.5, 1.0, 2.0] {
                let report = uncertainty_report(&psi, hbar)?;
                worst_gap = worst_gap.min(report.product - report.bound);
            }
        }
        if worst_gap >= -1e-9 {
            Ok(CheckOutcome::pass(
                name,
                format!("smallest product-bound gap {worst_gap:.3e}"),
            ))
        } else {
            Ok(CheckOutcome::fail(
                name,
                format!("bound violated by {worst_gap:.3e}"),
            ))
        }
    })
}

fn cramer_rao_link() -> CheckOutcome {
    let name = "cramer_rao_link";
    guard(name, || {
        let grid = standard_corpus_grid();
        let mut worst = f64::INFINITY;
        for (_, psi) in standard_corpus(grid)? {
            let report = uncertainty_report(&psi, 1.0)?;
            worst = worst.min(report.delta_x * report.delta_x * report.fisher_value);
        }
        if worst >= 1.0 - 1e-9 {
            Ok(CheckOutcome::pass(
                name,
                format!("smallest (dx)^2 I = {worst:.9}"),
            ))
        } else {
            Ok(CheckOutcome::fail(
                name,
                format!("(dx)^2 I fell to {worst:.9}"),
            ))
        }
    })
}

fn gaussian_minimality() -> CheckOutcome {
    let name = "gaussian_minimality";
    guard(name, || {
        let grid = make_grid(-12.0, 12.0, 2049)?;
        let rows = gaussian_minimality_probe(grid, 1.0, &[-0.2, -0.1, 0.0, 0.1, 0.2], 1.0)?;
        let at_zero = rows
            .iter()
            .find(|(a, _)| *a == 0.0)
            .map(|(_, p)| *p)
            .unwrap_or(f64::NAN);
        let margin = rows
            .iter()
            .filter(|(a, _)| *a != 0.0)
            .map(|(_, p)| p - at_zero)
            .fold(f64::INFINITY, f64::min);
        if margin >= 1e-5 {
            Ok(CheckOutcome::pass(name, format!("margin {margin:.3e}")))
        } else {
            Ok(CheckOutcome::fail(name, format!("margin {margin:.3e}")))
        }
    })
}

fn estimator_bound_quick() -> CheckOutcome {
    let name = "estimator_bound_quick";
    guard(name, || {
        let grid = make_grid(-8.0, 8.0, 1025)?;
        let base = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid)?);
        let family = LocationFamily::new(base, 0.0)?;
        let mean = run_experiment(&EstimatorSpec::SampleMean, &family, 50, 1500, 0)?;
        let median = run_experiment(&EstimatorSpec::SampleMedian, &family, 51, 1500, 0)?;
        if mean.bound_satisfied && median.bound_satisfied {
            Ok(CheckOutcome::pass(
                name,
                format!(
                    "mean var/bound {:.3}, median var/bound {:.3}",
                    mean.empirical_variance / mean.cr_bound,
                    median.empirical_variance / median.cr_bound
                ),
            ))
        } else {
            Ok(CheckOutcome::fail(name, "bound violated".to_string()))
        }
    })
}

fn sampling_determinism() -> CheckOutcome {
    let name = "sampling_determinism";
    guard(name, || {
        let grid = make_grid(-8.0, 8.0, 1025)?;
        let base = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid)?);
        let family = LocationFamily::new(base, 0.0)?;
        let a = draw_samples(&family, 1000, 42)?;
        let b = draw_samples(&family, 1000, 42)?;
        if a == b {
            Ok(CheckOutcome::pass(name, "bit-identical draws".to_string()))
        } else {
            Ok(CheckOutcome::fail(name, "draws differ".to_string()))
        }
    })
}
