//! Derived expected values frozen from independent oracles: the adaptive
//! quadrature in `common`, closed forms for Gaussian and sech profiles,
//! and cross-route consistency checks.

mod common;

use common::{moments, quad};
use qfisher_core::{
    corpus, density_of, fisher_amplitude, fisher_location, kerridge_inaccuracy, make_grid,
    momentum_identity_check, momentum_variance, position_variance, shift, standard_corpus,
    standard_corpus_grid, uncertainty_report, RealField, StateSpec,
};

#[test]
fn gaussian_normalization_against_refined_quadrature() {
    // the production value at n = 1025 and the same rule refined to
    // n = 8193 must both sit on the oracle value 1
    let norm = std::f64::consts::PI.sqrt();
    for n in [1025usize, 8193] {
        let grid = make_grid(-8.0, 8.0, n).unwrap();
        let f = RealField::from_fn(grid, |x| (-x * x).exp() / norm);
        let value = f.integrate().unwrap();
        assert!((value - 1.0).abs() < 1e-12, "n = {n}: {value}");
    }
    let oracle = quad(|x| (-x * x).exp() / norm, -8.0, 8.0, 1e-14);
    assert!((oracle - 1.0).abs() < 1e-12);
}

#[test]
fn fisher_oracle_is_inverse_variance() {
    // closed form I = 1/sigma^2; oracle recomputes it by quadrature of
    // the score integrand
    for sigma in [1.0f64, 2.0] {
        let half = 8.0 * sigma;
        let grid = make_grid(-half, half, 2049).unwrap();
        let psi = corpus(&StateSpec::Gaussian { delta_x: sigma }, grid).unwrap();
        let score = move |x: f64| {
            let p = (-x * x / (2.0 * sigma * sigma)).exp()
                / (sigma * (2.0 * std::f64::consts::PI).sqrt());
            (x / (sigma * sigma)).powi(2) * p
        };
        let oracle = quad(score, -half, half, 1e-13);
        assert!((oracle - 1.0 / (sigma * sigma)).abs() < 1e-9);
        let loc = fisher_location(&density_of(&psi)).unwrap().value;
        let amp = fisher_amplitude(&psi).unwrap().value;
        assert!((loc - oracle).abs() < 1e-6 * oracle, "loc {loc} vs {oracle}");
        assert!((amp - oracle).abs() < 1e-6 * oracle, "amp {amp} vs {oracle}");
    }
}

#[test]
fn sech_fisher_matches_closed_form() {
    // I = 4 / (3 s^2) for psi ~ sech(x/s)
    let grid = standard_corpus_grid();
    let psi = corpus(&StateSpec::Sech { scale: 1.0 }, grid).unwrap();
    let expected = 4.0 / 3.0;
    let amp = fisher_amplitude(&psi).unwrap().value;
    assert!(
        ((amp - expected) / expected).abs() < 1e-6,
        "amp {amp} vs {expected}"
    );
}

#[test]
fn double_gaussian_variance_against_moment_oracle() {
    let grid = make_grid(-12.0, 12.0, 1537).unwrap();
    let psi = corpus(
        &StateSpec::DoubleGaussian {
            separation: 4.0,
            delta_x: 0.5,
        },
        grid,
    )
    .unwrap();
    let profile = |x: f64| {
        let g = |c: f64| (-(x - c) * (x - c)).exp();
        let amp = g(2.0) + g(-2.0);
        amp * amp
    };
    let (_, oracle_var) = moments(profile, -12.0, 12.0, 1e-13);
    let var = position_variance(&psi).unwrap();
    assert!(
        (var - oracle_var).abs() < 1e-8,
        "var {var} vs oracle {oracle_var}"
    );
}

#[test]
fn gaussian_momentum_variance_closed_form() {
    // <p^2> = hbar^2 / (4 dx^2)
    let grid = make_grid(-8.0, 8.0, 2049).unwrap();
    let psi = corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap();
    assert!((momentum_variance(&psi, 1.0).unwrap() - 0.25).abs() < 1e-6);
    let narrow = corpus(&StateSpec::Gaussian { delta_x: 0.5 }, grid).unwrap();
    assert!((momentum_variance(&narrow, 1.0).unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn sech_uncertainty_product_is_pi_over_six() {
    // dx^2 = pi^2 s^2 / 12 and <p^2> = hbar^2/(3 s^2) give pi/6
    let grid = standard_corpus_grid();
    let psi = corpus(&StateSpec::Sech { scale: 1.0 }, grid).unwrap();
    let report = uncertainty_report(&psi, 1.0).unwrap();
    let expected = std::f64::consts::PI / 6.0;
    assert!(
        ((report.product - expected) / expected).abs() < 1e-6,
        "product {} vs {expected}",
        report.product
    );
}

#[test]
fn cosine_window_product_against_oracle() {
    let grid = standard_corpus_grid();
    let psi = corpus(&StateSpec::CosineWindow { width: 4.0 }, grid).unwrap();
    let report = uncertainty_report(&psi, 1.0).unwrap();

    let profile = |x: f64| {
        if x.abs() < 2.0 {
            (std::f64::consts::PI * x / 4.0).cos().powi(8)
        } else {
            0.0
        }
    };
    let (_, var_x) = moments(profile, -2.0, 2.0, 1e-13);
    // closed form for the kinetic integral: I = 64 pi^2 / (7 w^2)
    let info = 64.0 * std::f64::consts::PI.powi(2) / (7.0 * 16.0);
    let expected = (var_x * info / 4.0).sqrt();
    assert!(
        ((report.product - expected) / expected).abs() < 1e-6,
        "product {} vs oracle {expected}",
        report.product
    );
    assert!(report.product > 0.5 + 1e-3);
}

#[test]
fn kerridge_gaussian_closed_form_values() {
    // K(delta) = delta^2 / (2 sigma^2) exactly for Gaussian location shifts
    let grid = make_grid(-8.0, 8.0, 1025).unwrap();
    let p = density_of(&corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap());
    let k = kerridge_inaccuracy(&p, 0.25).unwrap();
    assert!((k - 0.03125).abs() < 1e-6, "K {k}");

    let grid = make_grid(-16.0, 16.0, 1025).unwrap();
    let p = density_of(&corpus(&StateSpec::Gaussian { delta_x: 2.0 }, grid).unwrap());
    let k = kerridge_inaccuracy(&p, 0.5).unwrap();
    assert!((k - 0.03125).abs() < 1e-6, "K {k}");
}

#[test]
fn shifted_gaussian_mean_by_moment_quadrature() {
    let grid = make_grid(-8.0, 8.0, 1025).unwrap();
    let psi = shift(
        &corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap(),
        1.0,
    )
    .unwrap();
    let mean = qfisher_core::position_mean(&psi).unwrap();
    assert!((mean - 1.0).abs() < 1e-8, "mean {mean}");
}

#[test]
fn momentum_identity_against_oracle_kinetic_integral() {
    // 4 <p^2> via the oracle for the unit Gaussian: 4 * 1/4 = 1
    let grid = make_grid(-8.0, 8.0, 1025).unwrap();
    let psi = corpus(&StateSpec::Gaussian { delta_x: 1.0 }, grid).unwrap();
    let id = momentum_identity_check(&psi, 1.0).unwrap();
    let norm = (2.0 * std::f64::consts::PI).sqrt();
    let oracle = 4.0 * quad(
        |x| (x / 2.0) * (x / 2.0) * (-x * x / 2.0).exp() / norm,
        -8.0,
        8.0,
        1e-14,
    );
    assert!((id.lhs - oracle).abs() < 1e-6);
    assert!((id.rhs - oracle).abs() < 1e-6);
    assert!(id.relative_gap < 1e-6);
}

#[test]
fn fisher_identity_relates_both_routes_for_the_corpus() {
    // hbar^2 I = 4 <p^2> on every corpus state, via the location route
    // (the amplitude route is exercised by momentum_identity_check)
    let grid = standard_corpus_grid();
    for (spec, psi) in standard_corpus(grid).unwrap() {
        let p2 = momentum_variance(&psi, 1.0).unwrap();
        let loc = fisher_location(&density_of(&psi)).unwrap().value;
        let gap = (loc - 4.0 * p2).abs() / (4.0 * p2);
        assert!(gap < 1e-6, "{}: gap {gap}", spec.label());
    }
}

#[test]
fn parametric_identity_between_log_density_and_amplitude_forms() {
    // integral (d ln p_theta / d theta)^2 p_theta dx = 4 integral
    // (d |psi_theta| / d theta)^2 dx over translated family members;
    // lattice translation turns the theta derivative into the exact
    // negative x derivative, so both forms are evaluated with the
    // shared fourth-order scheme on each member
    let grid = standard_corpus_grid();
    for (spec, psi) in standard_corpus(grid).unwrap() {
        for theta in [0.0, 0.25, -0.25] {
            let member = shift(&psi, theta).unwrap();
            let log_density_form = fisher_location(&density_of(&member)).unwrap().value;
            let amplitude_form = fisher_amplitude(&member).unwrap().value;
            let gap = (log_density_form - amplitude_form).abs() / amplitude_form;
            assert!(gap < 1e-6, "{} at theta {theta}: gap {gap}", spec.label());
        }
    }
}

#[test]
fn information_bound_link_saturates_exactly_for_gaussians() {
    // (dx)^2 I >= 1 with equality within 1e-6 iff the state is Gaussian
    let grid = standard_corpus_grid();
    for (spec, psi) in standard_corpus(grid).unwrap() {
        let report = uncertainty_report(&psi, 1.0).unwrap();
        let link = report.delta_x * report.delta_x * report.fisher_value;
        assert!(link >= 1.0 - 1e-9, "{}: link {link}", spec.label());
        if matches!(spec, StateSpec::Gaussian { .. }) {
            assert!((link - 1.0).abs() < 1e-6, "{}: link {link}", spec.label());
        } else {
            assert!(link > 1.0 + 1e-3, "{}: link {link}", spec.label());
        }
    }
}
