//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by model construction, state assembly, and observables.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("angular frequency must be positive (got {0:e} rad/s)")]
    NonPositiveFrequency(f64),
    #[error("band polynomial must have at least one coefficient")]
    EmptyBandPolynomial,
    #[error("band polynomial constant term must be positive (got {0:e} m^-1)")]
    NonPositiveBandConstant(f64),
    #[error("coupling parameter must be non-negative (got {0:e} m^-1)")]
    NegativeCoupling(f64),
    #[error("grating period must be positive (got {0:e} m)")]
    NonPositiveGratingPeriod(f64),
    #[error("grating order must be at least 1")]
    ZeroGratingOrder,
    #[error("interaction length must be positive (got {0:e} m)")]
    NonPositiveLength(f64),
    #[error("pump spectral standard deviation must be positive (got {0:e} rad/s)")]
    NonPositiveSpectralStd(f64),
    #[error("frequency axis needs at least two points (got {0})")]
    GridTooSmall(usize),
    #[error("frequency axis must be strictly increasing")]
    GridNotIncreasing,
    #[error("frequency axis spacing is not uniform (max deviation {deviation:e} vs step {step:e})")]
    GridNotUniform { step: f64, deviation: f64 },
    #[error("grid span must be positive and smaller than the band center frequency")]
    InvalidGridSpan,
    #[error("grid policy produced no span: zero phase-matching slope and zero pump width")]
    UndefinedGridSpan,
    #[error("amplitude tensor shape {got:?} does not match (2, 2, {n_signal}, {n_idler})")]
    TensorShapeMismatch { got: (usize, usize, usize, usize), n_signal: usize, n_idler: usize },
    #[error("matrix is not unitary (max |U U^dag - I| entry {0:e})")]
    NotUnitary(f64),
    #[error("state is not normalized (total probability {0}); renormalize explicitly if intended")]
    NotNormalized(f64),
    #[error("state has zero total probability")]
    ZeroNorm,
    #[error("central band is empty: the pump configuration does not excite the SA/AS pair")]
    EmptyCentralBand,
    #[error("coincidence rates are all zero; fidelity undefined")]
    AllRatesZero,
    #[error("trace is empty")]
    EmptyTrace,
    #[error("trace entries must be non-negative (got {0:e})")]
    NegativeTraceEntry(f64),
    #[error("trace is identically zero; visibility undefined")]
    AllZeroTrace,
    #[error("scan axis must be strictly monotonic")]
    NonMonotonicAxis,
}

pub type Result<T> = std::result::Result<T, Error>;
