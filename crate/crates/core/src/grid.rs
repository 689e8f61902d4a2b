//! Uniform one-dimensional grids, composite Simpson quadrature, and
//! fourth-order finite differences.
//!
//! Everything downstream (densities, Fisher integrals, divergence scans)
//! is built on the three primitives in this module: [`Grid1D`],
//! [`RealField::integrate`], and the `derivative` methods. Quadrature and
//! differentiation are both fourth-order so neither dominates the error
//! budget of the other.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest admissible point count. Composite Simpson additionally
/// requires the count to be odd, so the effective minimum is 17.
pub const MIN_POINTS: usize = 16;

/// Endpoint magnitude above which a physical field is considered
/// insufficiently decayed. Reported as a warning, never an error.
pub const ENDPOINT_FIELD_WARN: f64 = 1e-12;

/// Uniform discretization of `[x_min, x_max]` with an odd number of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    spacing: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() || !x_max.is_finite() || x_min >= x_max {
            return Err(Error::GridBounds { x_min, x_max });
        }
        if n_points < MIN_POINTS || n_points.is_multiple_of(2) {
            return Err(Error::GridSize { n_points });
        }
        let spacing = (x_max - x_min) / (n_points - 1) as f64;
        Ok(Self {
            x_min,
            x_max,
            n_points,
            spacing,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Position of the `index`-th node.
    pub fn position(&self, index: usize) -> f64 {
        self.x_min + index as f64 * self.spacing
    }

    /// All node positions, left to right.
    pub fn positions(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.position(i))
    }

    /// Signed number of lattice steps equivalent to `value`.
    ///
    /// `value` must be an integer multiple of the spacing; anything else
    /// (for instance half a spacing) is rejected rather than interpolated.
    pub fn lattice_steps(&self, value: f64) -> Result<i64> {
        let steps = value / self.spacing;
        let rounded = steps.round();
        if !steps.is_finite() || (steps - rounded).abs() > 1e-9 {
            return Err(Error::OffLattice {
                value,
                spacing: self.spacing,
            });
        }
        Ok(rounded as i64)
    }

    /// Simpson coefficient of one node (1, 4, 2, ..., 4, 1).
    pub(crate) fn simpson_coeff(&self, index: usize) -> f64 {
        if index == 0 || index + 1 == self.n_points {
            1.0
        } else if index % 2 == 1 {
            4.0
        } else {
            2.0
        }
    }

    /// Full quadrature weight of one node, `coeff * spacing / 3`.
    pub(crate) fn simpson_weight(&self, index: usize) -> f64 {
        self.simpson_coeff(index) * self.spacing / 3.0
    }
}

/// Builds a [`Grid1D`], rejecting even counts, counts below 16, and
/// non-finite or inverted bounds.
pub fn make_grid(x_min: f64, x_max: f64, n_points: usize) -> Result<Grid1D> {
    Grid1D::new(x_min, x_max, n_points)
}

/// Neumaier-compensated accumulator; keeps long quadrature sums accurate
/// to well below the 1e-12 relative tolerances used throughout.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub(crate) fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.comp += (self.sum - t) + value;
        } else {
            self.comp += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

pub(crate) fn kahan_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = Kahan::default();
    for v in values {
        acc.add(v);
    }
    acc.total()
}

/// Real-valued samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid1D,
    values: Vec<f64>,
}

/// Complex-valued samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl RealField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::FieldLength {
                len: values.len(),
                expected: grid.n_points(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> f64) -> Self {
        let values = grid.positions().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    /// Composite Simpson estimate of the integral over `[x_min, x_max]`.
    /// Exact for cubics up to rounding.
    pub fn integrate(&self) -> Result<f64> {
        self.check_finite()?;
        let sum = kahan_sum(
            self.values
                .iter()
                .enumerate()
                .map(|(i, v)| self.grid.simpson_coeff(i) * v),
        );
        Ok(sum * self.grid.spacing() / 3.0)
    }

    /// Fourth-order finite-difference derivative: central stencils in the
    /// interior, one-sided fourth-order stencils on the two boundary bands.
    pub fn derivative(&self) -> Result<RealField> {
        self.check_finite()?;
        Ok(RealField {
            grid: self.grid,
            values: differentiate(&self.values, self.grid.spacing()),
        })
    }
}

impl ComplexField {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::FieldLength {
                len: values.len(),
                expected: grid.n_points(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.positions().map(f).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn check_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(index) => Err(Error::NonFinite { index }),
            None => Ok(()),
        }
    }

    /// Pointwise squared modulus as a real field.
    pub fn norm_squared(&self) -> RealField {
        RealField {
            grid: self.grid,
            values: self.values.iter().map(|c| c.norm_sqr()).collect(),
        }
    }

    /// Pointwise modulus as a real field.
    pub fn modulus(&self) -> RealField {
        RealField {
            grid: self.grid,
            values: self.values.iter().map(|c| c.norm()).collect(),
        }
    }

    /// Same stencils as [`RealField::derivative`], applied componentwise.
    pub fn derivative(&self) -> Result<ComplexField> {
        self.check_finite()?;
        Ok(ComplexField {
            grid: self.grid,
            values: differentiate(&self.values, self.grid.spacing()),
        })
    }
}

fn differentiate<T>(values: &[T], spacing: f64) -> Vec<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let inv = 1.0 / (12.0 * spacing);
    let v = values;
    let mut out = Vec::with_capacity(n);
    out.push((v[0] * -25.0 + v[1] * 48.0 + v[2] * -36.0 + v[3] * 16.0 + v[4] * -3.0) * inv);
    out.push((v[0] * -3.0 + v[1] * -10.0 + v[2] * 18.0 + v[3] * -6.0 + v[4] * 1.0) * inv);
    for i in 2..n - 2 {
        out.push((v[i - 2] - v[i + 2] + (v[i + 1] - v[i - 1]) * 8.0) * inv);
    }
    out.push(
        (v[n - 1] * 3.0 + v[n - 2] * 10.0 + v[n - 3] * -18.0 + v[n - 4] * 6.0 + v[n - 5] * -1.0)
            * inv,
    );
    out.push(
        (v[n - 1] * 25.0 + v[n - 2] * -48.0 + v[n - 3] * 36.0 + v[n - 4] * -16.0 + v[n - 5] * 3.0)
            * inv,
    );
    out
}
