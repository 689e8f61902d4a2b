//! Kerridge inaccuracy between a density and its lattice-shifted copy,
//! and the scan comparing it against the quadratic Fisher approximation
//! `K(delta) ~ I/2 * delta^2`.
//!
//! Values are reported in nats.

use crate::error::{Error, Result};
use crate::fisher::{fisher_location, DENSITY_CUTOFF, EXCLUDED_MASS_LIMIT};
use crate::grid::{Grid1D, Kahan};
use crate::state::DensityGrid;

/// Numerical floor below which a computed divergence is treated as a
/// validation failure rather than quadrature noise.
pub const NONNEGATIVITY_FLOOR: f64 = -1e-12;

/// One row per shift: the divergence, its quadratic approximation
/// `I/2 * delta^2`, and their difference.
#[derive(Debug, Clone, PartialEq)]
pub struct KLScanResult {
    pub shifts: Vec<f64>,
    pub kl_values: Vec<f64>,
    pub quadratic_values: Vec<f64>,
    pub residuals: Vec<f64>,
}

/// `integral p(x) ln[p(x) / p(x + delta)] dx` over samples where both
/// densities clear the low-density cutoff. `delta` must be a lattice
/// multiple; excluded probability mass above the audit limit is an error.
pub fn kerridge_inaccuracy(p: &DensityGrid, delta: f64) -> Result<f64> {
    let grid = p.grid();
    // q(x) = p(x + delta) is the density translated by -delta
    let q = p.shifted(-delta)?;
    let mut value = Kahan::default();
    let mut excluded = Kahan::default();
    for (i, (&pi, &qi)) in p.p().iter().zip(q.p()).enumerate() {
        let w = grid.simpson_weight(i);
        if pi < DENSITY_CUTOFF || qi < DENSITY_CUTOFF {
            excluded.add(w * pi);
        } else {
            value.add(w * pi * (pi / qi).ln());
        }
    }
    let excluded_mass = excluded.total();
    if excluded_mass > EXCLUDED_MASS_LIMIT {
        return Err(Error::ExcludedMass {
            mass: excluded_mass,
            limit: EXCLUDED_MASS_LIMIT,
        });
    }
    let value = value.total();
    if value < NONNEGATIVITY_FLOOR {
        return Err(Error::DivergenceFloor { value });
    }
    Ok(value)
}

/// Runs [`kerridge_inaccuracy`] over `deltas` and fills in the quadratic
/// comparison using the density's own Fisher information.
pub fn kl_quadratic_scan(p: &DensityGrid, deltas: &[f64]) -> Result<KLScanResult> {
    let info = fisher_location(p)?.value;
    let mut shifts = Vec::with_capacity(deltas.len());
    let mut kl_values = Vec::with_capacity(deltas.len());
    let mut quadratic_values = Vec::with_capacity(deltas.len());
    let mut residuals = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let kl = kerridge_inaccuracy(p, delta)?;
        let quadratic = 0.5 * info * delta * delta;
        shifts.push(delta);
        kl_values.push(kl);
        quadratic_values.push(quadratic);
        residuals.push(kl - quadratic);
    }
    Ok(KLScanResult {
        shifts,
        kl_values,
        quadratic_values,
        residuals,
    })
}

/// Default scan shifts: +-{1, 2, 4, 8, 16} grid spacings, spanning the
/// asymptotic regime and the visibly non-quadratic one.
pub fn default_scan_deltas(grid: &Grid1D) -> Vec<f64> {
    let h = grid.spacing();
    [-16.0, -8.0, -4.0, -2.0, -1.0, 1.0, 2.0, 4.0, 8.0, 16.0]
        .iter()
        .map(|m| m * h)
        .collect()
}

/// Least-squares coefficient `c` of `kl ~ c * delta^2` over the `points`
/// smallest nonzero shifts. Recovering `c = I/2` is the central check
/// that the divergence curvature is the Fisher information.
pub fn curvature_fit(scan: &KLScanResult, points: usize) -> Option<f64> {
    let mut order: Vec<usize> = (0..scan.shifts.len())
        .filter(|&i| scan.shifts[i] != 0.0)
        .collect();
    order.sort_by(|&a, &b| {
        scan.shifts[a]
            .abs()
            .partial_cmp(&scan.shifts[b].abs())
            .expect("finite shifts")
    });
    order.truncate(points);
    if order.is_empty() {
        return None;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for i in order {
        let d2 = scan.shifts[i] * scan.shifts[i];
        num += d2 * scan.kl_values[i];
        den += d2 * d2;
    }
    (den > 0.0).then(|| num / den)
}
