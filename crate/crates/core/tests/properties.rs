//! Property tests for the invariants that hold over whole input
//! families rather than single examples.

use num_complex::Complex64;
use proptest::prelude::*;
use qfisher_core::{
    apply_estimator, corpus, density_of, draw_samples, fisher_amplitude, kerridge_inaccuracy,
    make_grid, shift, EstimatorSpec, LocationFamily, RealField, StateSpec, WavefunctionGrid,
};

fn gaussian_state() -> WavefunctionGrid {
    let grid = make_grid(-12.0, 12.0, 1537).unwrap();
    corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn integrate_is_linear(a in -4.0f64..4.0, b in -4.0f64..4.0) {
        let grid = make_grid(-4.0, 4.0, 257).unwrap();
        let f = RealField::from_fn(grid, |x| (-x * x).exp());
        let g = RealField::from_fn(grid, |x| (x * 1.3).cos());
        let combined = RealField::new(
            grid,
            f.values().iter().zip(g.values()).map(|(fv, gv)| a * fv + b * gv).collect(),
        ).unwrap();
        let lhs = combined.integrate().unwrap();
        let fa = f.integrate().unwrap();
        let gb = g.integrate().unwrap();
        let rhs = a * fa + b * gb;
        let scale = (a * fa).abs() + (b * gb).abs() + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale);
    }

    #[test]
    fn shift_preserves_norm_for_admissible_lattice_steps(steps in -128i64..128) {
        let psi = gaussian_state();
        let theta = steps as f64 * psi.grid().spacing();
        let shifted = shift(&psi, theta).unwrap();
        let norm = shifted.as_complex_field().norm_squared().integrate().unwrap();
        prop_assert!((norm - 1.0).abs() < 1e-10);
    }

    #[test]
    fn global_phase_is_unobservable(phi in 0.0f64..std::f64::consts::TAU) {
        let psi = gaussian_state();
        let phase = Complex64::from_polar(1.0, phi);
        let rotated = WavefunctionGrid::new(
            psi.grid(),
            psi.psi().iter().map(|c| c * phase).collect(),
        ).unwrap();
        let p0 = density_of(&psi);
        let p1 = density_of(&rotated);
        for (a, b) in p0.p().iter().zip(p1.p()) {
            prop_assert!((a - b).abs() < 1e-14);
        }
        let f0 = fisher_amplitude(&psi).unwrap().value;
        let f1 = fisher_amplitude(&rotated).unwrap().value;
        prop_assert!((f0 - f1).abs() <= 1e-12 * f0);
    }

    #[test]
    fn kerridge_is_nonnegative_on_lattice_shifts(steps in -32i64..32) {
        let p = density_of(&gaussian_state());
        let delta = steps as f64 * p.grid().spacing();
        let k = kerridge_inaccuracy(&p, delta).unwrap();
        prop_assert!(k >= -1e-12, "K({delta}) = {k}");
    }

    #[test]
    fn draws_are_reproducible(seed in any::<u64>()) {
        let base = density_of(&gaussian_state());
        let family = LocationFamily::new(base, 0.0).unwrap();
        let a = draw_samples(&family, 64, seed).unwrap();
        let b = draw_samples(&family, 64, seed).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn mean_is_translation_equivariant(offset in -5.0f64..5.0, samples in prop::collection::vec(-10.0f64..10.0, 1..40)) {
        let base = apply_estimator(&EstimatorSpec::SampleMean, &samples).unwrap();
        let moved: Vec<f64> = samples.iter().map(|x| x + offset).collect();
        let shifted = apply_estimator(&EstimatorSpec::SampleMean, &moved).unwrap();
        prop_assert!((shifted - base - offset).abs() < 1e-9);
    }

    #[test]
    fn median_lies_between_extremes(samples in prop::collection::vec(-10.0f64..10.0, 1..40)) {
        let median = apply_estimator(&EstimatorSpec::SampleMedian, &samples).unwrap();
        let lo = samples.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(median >= lo && median <= hi);
    }

    #[test]
    fn shrunk_mean_scales_the_mean(c in 0.01f64..1.0, samples in prop::collection::vec(-10.0f64..10.0, 1..40)) {
        let mean = apply_estimator(&EstimatorSpec::SampleMean, &samples).unwrap();
        let shrunk = apply_estimator(&EstimatorSpec::ShrunkMean(c), &samples).unwrap();
        prop_assert!((shrunk - c * mean).abs() < 1e-12);
    }
}
