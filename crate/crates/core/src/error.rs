use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by grid construction, state validation, and the
/// numerical operations built on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid bounds must be finite with x_min < x_max, got [{x_min}, {x_max}]")]
    GridBounds { x_min: f64, x_max: f64 },

    #[error("n_points must be odd and at least 16, got {n_points}")]
    GridSize { n_points: usize },

    #[error("field has {len} samples but the grid has {expected} points")]
    FieldLength { len: usize, expected: usize },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("cannot normalize a field with vanishing norm")]
    ZeroNorm,

    #[error("state is not normalized: integral is {norm}")]
    NotNormalized { norm: f64 },

    #[error("density has negative sample {value} at index {index}")]
    NegativeDensity { index: usize, value: f64 },

    #[error("endpoint probability mass {mass} exceeds the {limit} limit")]
    EndpointMass { mass: f64, limit: f64 },

    #[error("{value} is not an integer multiple of the grid spacing {spacing}")]
    OffLattice { value: f64, spacing: f64 },

    #[error("unknown corpus state `{name}`")]
    UnknownState { name: String },

    #[error("invalid parameters for `{state}`: {reason}")]
    StateParams { state: &'static str, reason: String },

    #[error("probability mass {mass} excluded by the density cutoff exceeds {limit}")]
    ExcludedMass { mass: f64, limit: f64 },

    #[error("divergence {value} fell below the -1e-12 numerical floor")]
    DivergenceFloor { value: f64 },

    #[error("wavefunction has imaginary parts up to {max_imag}; a real state is required")]
    ComplexState { max_imag: f64 },

    #[error("mean momentum {mean} is not negligible; <p> = 0 is required")]
    NonzeroMeanMomentum { mean: f64 },

    #[error("position variance {variance} is degenerate")]
    DegenerateVariance { variance: f64 },

    #[error("uncertainty product {product} violates the lower bound {bound}")]
    BoundViolation { product: f64, bound: f64 },

    #[error("perturbation amplitude {amplitude} rejected: {reason}")]
    PerturbedState { amplitude: f64, reason: String },

    #[error("perturbation amplitudes must contain 0")]
    MissingZeroAmplitude,

    #[error("estimator needs at least one sample")]
    EmptySamples,

    #[error("at least one sample must be requested")]
    NoSamplesRequested,

    #[error("shrink factor must lie in (0, 1], got {factor}")]
    ShrinkFactor { factor: f64 },

    #[error("unknown estimator `{name}`")]
    UnknownEstimator { name: String },

    #[error("at least 1000 trials are required, got {trials}")]
    TooFewTrials { trials: usize },

    #[error("cumulative distribution decreases near index {index}")]
    NonMonotoneCdf { index: usize },
}
