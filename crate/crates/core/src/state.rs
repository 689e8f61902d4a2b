//! Wavefunctions, probability densities, location families, and the
//! built-in corpus of test states.
//!
//! A [`WavefunctionGrid`] is validated on construction: unit norm and
//! negligible probability mass at the two grid endpoints. Densities carry
//! the matching invariants (nonnegative, unit integral). Shifts are
//! restricted to integer multiples of the grid spacing so translation is
//! exact on the lattice and never interpolates.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{ComplexField, Grid1D, RealField, ENDPOINT_FIELD_WARN};

/// Tolerance on `integral(|psi|^2) = 1` and `integral(p) = 1`.
pub const NORM_TOL: f64 = 1e-10;

/// Hard limit on the probability density at either grid endpoint.
pub const ENDPOINT_MASS_LIMIT: f64 = 1e-10;

/// Normalized complex amplitude samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionGrid {
    grid: Grid1D,
    psi: Vec<Complex64>,
}

impl WavefunctionGrid {
    /// Validates unit norm (within [`NORM_TOL`]) and endpoint decay
    /// (density below [`ENDPOINT_MASS_LIMIT`] at both ends).
    pub fn new(grid: Grid1D, psi: Vec<Complex64>) -> Result<Self> {
        let field = ComplexField::new(grid, psi)?;
        let norm = field.norm_squared().integrate()?;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        let values = field.values();
        let mass = values[0]
            .norm_sqr()
            .max(values[values.len() - 1].norm_sqr());
        if mass > ENDPOINT_MASS_LIMIT {
            return Err(Error::EndpointMass {
                mass,
                limit: ENDPOINT_MASS_LIMIT,
            });
        }
        let psi = field.values().to_vec();
        Ok(Self { grid, psi })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn psi(&self) -> &[Complex64] {
        &self.psi
    }

    /// Pointwise modulus `|psi|` as a real field.
    pub fn amplitude(&self) -> RealField {
        RealField::new(self.grid, self.psi.iter().map(|c| c.norm()).collect())
            .expect("amplitude length matches grid")
    }

    pub fn as_complex_field(&self) -> ComplexField {
        ComplexField::new(self.grid, self.psi.clone()).expect("length matches grid")
    }

    /// Largest absolute imaginary part over all samples.
    pub fn max_imag(&self) -> f64 {
        self.psi.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// Soft diagnostics: endpoint amplitudes above the warning level.
    /// These do not invalidate the state.
    pub fn endpoint_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let last = self.psi.len() - 1;
        for (label, value) in [("x_min", self.psi[0]), ("x_max", self.psi[last])] {
            let a = value.norm();
            if a >= ENDPOINT_FIELD_WARN {
                warnings.push(format!(
                    "|psi({label})| = {a:.3e} exceeds the {ENDPOINT_FIELD_WARN:.0e} decay level"
                ));
            }
        }
        warnings
    }
}

/// Nonnegative, unit-integral density samples on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    grid: Grid1D,
    p: Vec<f64>,
}

impl DensityGrid {
    pub fn new(grid: Grid1D, p: Vec<f64>) -> Result<Self> {
        let field = RealField::new(grid, p)?;
        let norm = field.integrate()?;
        if let Some(index) = field.values().iter().position(|&v| v < 0.0) {
            return Err(Error::NegativeDensity {
                index,
                value: field.values()[index],
            });
        }
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        let p = field.values().to_vec();
        Ok(Self { grid, p })
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn as_field(&self) -> RealField {
        RealField::new(self.grid, self.p.clone()).expect("length matches grid")
    }

    /// Lattice translation by `theta` (an exact multiple of the spacing),
    /// zero-filling vacated samples. Fails if the translation pushes
    /// non-negligible mass off the grid.
    pub fn shifted(&self, theta: f64) -> Result<DensityGrid> {
        let steps = self.grid.lattice_steps(theta)?;
        DensityGrid::new(self.grid, translate(&self.p, steps))
    }

    pub fn endpoint_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let last = self.p.len() - 1;
        for (label, value) in [("x_min", self.p[0]), ("x_max", self.p[last])] {
            if value >= ENDPOINT_FIELD_WARN {
                warnings.push(format!(
                    "p({label}) = {value:.3e} exceeds the {ENDPOINT_FIELD_WARN:.0e} decay level"
                ));
            }
        }
        warnings
    }
}

/// `|psi(x)|^2` as a validated density.
///
/// The density integral equals the wavefunction norm sample for sample,
/// so this cannot fail on a valid state.
pub fn density_of(psi: &WavefunctionGrid) -> DensityGrid {
    DensityGrid {
        grid: psi.grid(),
        p: psi.psi().iter().map(|c| c.norm_sqr()).collect(),
    }
}

/// Scales `raw` by the inverse of its L2 norm and validates the result.
pub fn normalize(raw: &ComplexField) -> Result<WavefunctionGrid> {
    let norm_sq = raw.norm_squared().integrate()?;
    if !norm_sq.is_finite() || norm_sq <= 0.0 {
        return Err(Error::ZeroNorm);
    }
    let scale = 1.0 / norm_sq.sqrt();
    let psi = raw.values().iter().map(|c| c * scale).collect();
    WavefunctionGrid::new(raw.grid(), psi)
}

/// Translates `psi` by `theta`, which must be an integer multiple of the
/// grid spacing. Vacated samples are zero-filled; a shift that moves
/// non-negligible mass off the grid is rejected by revalidation.
pub fn shift(psi: &WavefunctionGrid, theta: f64) -> Result<WavefunctionGrid> {
    let steps = psi.grid().lattice_steps(theta)?;
    WavefunctionGrid::new(psi.grid(), translate(psi.psi(), steps))
}

fn translate<T: Copy + Default>(values: &[T], steps: i64) -> Vec<T> {
    let n = values.len() as i64;
    (0..n)
        .map(|i| {
            let j = i - steps;
            if (0..n).contains(&j) {
                values[j as usize]
            } else {
                T::default()
            }
        })
        .collect()
}

/// Parametric location family `p_theta(x) = p(x - theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocationFamily {
    base: DensityGrid,
    theta: f64,
}

impl LocationFamily {
    /// `theta` must be a lattice multiple and the member at `theta` must
    /// still be a valid density on the grid.
    pub fn new(base: DensityGrid, theta: f64) -> Result<Self> {
        base.shifted(theta)?;
        Ok(Self { base, theta })
    }

    pub fn base(&self) -> &DensityGrid {
        &self.base
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Realizes the member density `p(x - theta)` on the family's grid.
    pub fn member(&self, theta: f64) -> Result<DensityGrid> {
        self.base.shifted(theta)
    }
}

/// Named test states addressable from the command line as
/// `name:param1[:param2]`.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `gaussian:DX` - packet with position standard deviation `DX`:
    /// `psi(x) = (2 pi DX^2)^(-1/4) exp(-x^2 / (4 DX^2))`.
    Gaussian { delta_x: f64 },
    /// `double_gaussian:SEP:DX` - symmetric superposition of two packets
    /// of width `DX` centered at `+-SEP/2`.
    DoubleGaussian { separation: f64, delta_x: f64 },
    /// `cosine_window:W` - compactly supported raised-cosine profile
    /// `cos^4(pi x / W)` on `|x| < W/2`, zero outside.
    CosineWindow { width: f64 },
    /// `sech:S` - heavy-tailed profile `sech(x / S)`.
    Sech { scale: f64 },
}

impl StateSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split(':');
        let name = parts.next().unwrap_or("");
        let params: Vec<&str> = parts.collect();
        match name {
            "gaussian" => Ok(StateSpec::Gaussian {
                delta_x: one_param("gaussian", &params)?,
            }),
            "double_gaussian" => {
                let (separation, delta_x) = two_params("double_gaussian", &params)?;
                Ok(StateSpec::DoubleGaussian {
                    separation,
                    delta_x,
                })
            }
            "cosine_window" => Ok(StateSpec::CosineWindow {
                width: one_param("cosine_window", &params)?,
            }),
            "sech" => Ok(StateSpec::Sech {
                scale: one_param("sech", &params)?,
            }),
            other => Err(Error::UnknownState { name: other.into() }),
        }
    }

    pub fn label(&self) -> String {
        match self {
            StateSpec::Gaussian { delta_x } => format!("gaussian:{delta_x}"),
            StateSpec::DoubleGaussian {
                separation,
                delta_x,
            } => format!("double_gaussian:{separation}:{delta_x}"),
            StateSpec::CosineWindow { width } => format!("cosine_window:{width}"),
            StateSpec::Sech { scale } => format!("sech:{scale}"),
        }
    }
}

fn parse_param(state: &'static str, text: &str) -> Result<f64> {
    let value: f64 = text.parse().map_err(|_| Error::StateParams {
        state,
        reason: format!("`{text}` is not a number"),
    })?;
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::StateParams {
            state,
            reason: format!("parameter {value} must be positive and finite"),
        });
    }
    Ok(value)
}

fn one_param(state: &'static str, params: &[&str]) -> Result<f64> {
    if params.len() != 1 {
        return Err(Error::StateParams {
            state,
            reason: format!("expected 1 parameter, got {}", params.len()),
        });
    }
    parse_param(state, params[0])
}

fn two_params(state: &'static str, params: &[&str]) -> Result<(f64, f64)> {
    if params.len() != 2 {
        return Err(Error::StateParams {
            state,
            reason: format!("expected 2 parameters, got {}", params.len()),
        });
    }
    Ok((parse_param(state, params[0])?, parse_param(state, params[1])?))
}

/// Realizes a corpus state on `grid`: evaluates the real-valued profile
/// and normalizes it. Parameters whose support does not decay inside the
/// grid fail the endpoint-mass validation.
pub fn corpus(spec: &StateSpec, grid: Grid1D) -> Result<WavefunctionGrid> {
    let raw = match spec {
        StateSpec::Gaussian { delta_x } => {
            let inv = 1.0 / (4.0 * delta_x * delta_x);
            ComplexField::from_fn(grid, |x| Complex64::new((-x * x * inv).exp(), 0.0))
        }
        StateSpec::DoubleGaussian {
            separation,
            delta_x,
        } => {
            let inv = 1.0 / (4.0 * delta_x * delta_x);
            let a = separation / 2.0;
            ComplexField::from_fn(grid, |x| {
                let left = (-(x + a) * (x + a) * inv).exp();
                let right = (-(x - a) * (x - a) * inv).exp();
                Complex64::new(left + right, 0.0)
            })
        }
        StateSpec::CosineWindow { width } => {
            let half = width / 2.0;
            let k = std::f64::consts::PI / width;
            ComplexField::from_fn(grid, |x| {
                if x.abs() < half {
                    Complex64::new((k * x).cos().powi(4), 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        }
        StateSpec::Sech { scale } => {
            let inv = 1.0 / scale;
            ComplexField::from_fn(grid, |x| Complex64::new(1.0 / (x * inv).cosh(), 0.0))
        }
    };
    normalize(&raw)
}

/// The four canonical corpus members used by the invariant suites:
/// `gaussian:1`, `double_gaussian:4:0.5`, `cosine_window:4`, `sech:1`.
pub fn standard_corpus(grid: Grid1D) -> Result<Vec<(StateSpec, WavefunctionGrid)>> {
    let specs = [
        StateSpec::Gaussian { delta_x: 1.0 },
        StateSpec::DoubleGaussian {
            separation: 4.0,
            delta_x: 0.5,
        },
        StateSpec::CosineWindow { width: 4.0 },
        StateSpec::Sech { scale: 1.0 },
    ];
    specs
        .into_iter()
        .map(|spec| corpus(&spec, grid).map(|psi| (spec, psi)))
        .collect()
}

/// Grid wide and fine enough for every standard corpus member:
/// `sech:1` needs the span for its tails, `cosine_window:4` the
/// resolution for its support edges, and the Gaussian needs the fine
/// spacing so its uncertainty product stays within 1e-9 of the bound.
pub fn standard_corpus_grid() -> Grid1D {
    Grid1D::new(-16.0, 16.0, 4097).expect("valid corpus grid")
}
