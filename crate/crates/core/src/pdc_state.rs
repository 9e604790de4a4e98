//! Assembly of the two-photon joint spectral amplitude in the eigenmode
//! basis.
//!
//! The state is a four-band complex tensor over a discretized
//! (signal, idler) frequency grid:
//!
//! ```text
//! amp(M, N, s, i) = w(M, N) * alpha(w_s + w_i) * Phi(delta_beta_MN, L)
//! ```
//!
//! with `w(S,S) = w(A,A) = gamma`, `w(S,A) = w(A,S) = delta` set by how the
//! pump is distributed over the eigenmodes, `alpha` the pump spectral
//! envelope and `Phi` the sinc phase-matching amplitude of the poled region.
//! After assembly the tensor is normalized to unit total probability with
//! the midpoint measure `d w_s * d w_i`.

use ndarray::{Array4, ArrayView2, ArrayView4};
use num_complex::Complex64;

use crate::dispersion::{DispersionModel, EigenLabel};
use crate::error::{Error, Result};

/// Discretized (signal, idler) angular-frequency axes.
///
/// Axes are stored canonically as `start + k * step`, which makes the
/// uniform-spacing invariant structural. `from_axes` accepts externally
/// produced arrays and validates them against that form.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    signal_start: f64,
    signal_step: f64,
    n_signal: usize,
    idler_start: f64,
    idler_step: f64,
    n_idler: usize,
}

impl FrequencyGrid {
    /// Uniform grid centered on `(signal_center, idler_center)` with the
    /// given half widths, inclusive of both edges.
    pub fn uniform(
        signal_center: f64,
        signal_half_width: f64,
        n_signal: usize,
        idler_center: f64,
        idler_half_width: f64,
        n_idler: usize,
    ) -> Result<Self> {
        let axis = |center: f64, half: f64, n: usize| -> Result<(f64, f64)> {
            if n < 2 {
                return Err(Error::GridTooSmall(n));
            }
            if !(half > 0.0) || half >= center {
                return Err(Error::InvalidGridSpan);
            }
            Ok((center - half, 2.0 * half / (n - 1) as f64))
        };
        let (signal_start, signal_step) = axis(signal_center, signal_half_width, n_signal)?;
        let (idler_start, idler_step) = axis(idler_center, idler_half_width, n_idler)?;
        Ok(Self { signal_start, signal_step, n_signal, idler_start, idler_step, n_idler })
    }

    /// Square grid: identical signal and idler axes.
    pub fn square(center: f64, half_width: f64, n: usize) -> Result<Self> {
        Self::uniform(center, half_width, n, center, half_width, n)
    }

    /// Builds a grid from explicit axes, validating that each is strictly
    /// increasing, positive, and uniform.
    ///
    /// Uniformity is checked to 1e-12 relative to the step, widened by the
    /// f64 representation granularity of the axis values themselves (at
    /// optical frequencies one ulp of an axis value is a sizeable fraction
    /// of 1e-12 of a typical step).
    pub fn from_axes(signal: &[f64], idler: &[f64]) -> Result<Self> {
        let axis = |a: &[f64]| -> Result<(f64, f64, usize)> {
            if a.len() < 2 {
                return Err(Error::GridTooSmall(a.len()));
            }
            if a[0] <= 0.0 {
                return Err(Error::NonPositiveFrequency(a[0]));
            }
            if a.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::GridNotIncreasing);
            }
            let n = a.len();
            let step = (a[n - 1] - a[0]) / (n - 1) as f64;
            let ulp = a[n - 1].abs() * f64::EPSILON;
            let deviation = a
                .windows(2)
                .map(|w| ((w[1] - w[0]) - step).abs())
                .fold(0.0, f64::max);
            if deviation > 1e-12 * step + 2.0 * ulp {
                return Err(Error::GridNotUniform { step, deviation });
            }
            Ok((a[0], step, n))
        };
        let (signal_start, signal_step, n_signal) = axis(signal)?;
        let (idler_start, idler_step, n_idler) = axis(idler)?;
        Ok(Self { signal_start, signal_step, n_signal, idler_start, idler_step, n_idler })
    }

    pub fn n_signal(&self) -> usize {
        self.n_signal
    }

    pub fn n_idler(&self) -> usize {
        self.n_idler
    }

    pub fn d_signal(&self) -> f64 {
        self.signal_step
    }

    pub fn d_idler(&self) -> f64 {
        self.idler_step
    }

    /// Integration measure of one grid cell, `d w_s * d w_i`.
    pub fn cell_area(&self) -> f64 {
        self.signal_step * self.idler_step
    }

    pub fn signal_at(&self, k: usize) -> f64 {
        self.signal_start + k as f64 * self.signal_step
    }

    pub fn idler_at(&self, k: usize) -> f64 {
        self.idler_start + k as f64 * self.idler_step
    }

    pub fn signal_axis(&self) -> Vec<f64> {
        (0..self.n_signal).map(|k| self.signal_at(k)).collect()
    }

    pub fn idler_axis(&self) -> Vec<f64> {
        (0..self.n_idler).map(|k| self.idler_at(k)).collect()
    }

    /// True when the signal and idler axes coincide.
    pub fn is_square(&self) -> bool {
        self.n_signal == self.n_idler
            && self.signal_start == self.idler_start
            && self.signal_step == self.idler_step
    }
}

/// Grid sizing rule: the span per axis is `span_sigmas` times the larger of
/// the pump spectral width and the phase-matching main-lobe scale
/// `pi / (L s)`, where `s` is the mismatch slope along an axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPolicy {
    pub n_signal: usize,
    pub n_idler: usize,
    pub span_sigmas: f64,
}

impl Default for GridPolicy {
    fn default() -> Self {
        Self { n_signal: 401, n_idler: 401, span_sigmas: 4.0 }
    }
}

impl GridPolicy {
    /// Builds the (signal, idler) grid for a pump centered at
    /// `env.central_frequency`, both axes centered on the degenerate
    /// frequency `w_p0 / 2`.
    pub fn build(
        &self,
        model: &DispersionModel,
        env: &PumpEnvelope,
        length: f64,
    ) -> Result<FrequencyGrid> {
        if length <= 0.0 {
            return Err(Error::NonPositiveLength(length));
        }
        let w_pump = env.central_frequency();
        let w_center = 0.5 * w_pump;
        let slope = (model.beta_slope(crate::dispersion::Band::Pump, w_pump)?
            - model.beta_slope(crate::dispersion::Band::Generated, w_center)?)
        .abs();
        let sigma_pm = if slope > 0.0 { std::f64::consts::PI / (length * slope) } else { 0.0 };
        let sigma_axis = sigma_pm.max(env.spectral_std());
        if !(sigma_axis > 0.0) {
            return Err(Error::UndefinedGridSpan);
        }
        let half_width = self.span_sigmas * sigma_axis;
        FrequencyGrid::uniform(
            w_center, half_width, self.n_signal,
            w_center, half_width, self.n_idler,
        )
    }
}

/// Gaussian spectral envelope of the pump pulse.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpEnvelope {
    central_frequency: f64,
    spectral_std: f64,
    amplitude_scale: f64,
}

impl PumpEnvelope {
    pub fn new(central_frequency: f64, spectral_std: f64, amplitude_scale: f64) -> Result<Self> {
        if central_frequency <= 0.0 {
            return Err(Error::NonPositiveFrequency(central_frequency));
        }
        if spectral_std <= 0.0 {
            return Err(Error::NonPositiveSpectralStd(spectral_std));
        }
        Ok(Self { central_frequency, spectral_std, amplitude_scale })
    }

    pub fn central_frequency(&self) -> f64 {
        self.central_frequency
    }

    pub fn spectral_std(&self) -> f64 {
        self.spectral_std
    }

    pub fn amplitude_scale(&self) -> f64 {
        self.amplitude_scale
    }

    /// Same envelope moved to a new central frequency (pump tuning).
    pub fn recentered(&self, central_frequency: f64) -> Result<Self> {
        Self::new(central_frequency, self.spectral_std, self.amplitude_scale)
    }

    /// Envelope amplitude at the energy-conservation point
    /// `w_s + w_i`: depends on the two frequencies only through their sum.
    pub fn alpha(&self, omega_s: f64, omega_i: f64) -> f64 {
        let detuning = (omega_s + omega_i) - self.central_frequency;
        self.amplitude_scale * (-detuning * detuning / (2.0 * self.spectral_std * self.spectral_std)).exp()
    }
}

/// How the pump laser is distributed over the two waveguides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PumpConfiguration {
    /// Both waveguides pumped in phase: only the symmetric eigenmode drives.
    Symmetric,
    /// Both waveguides pumped with a pi phase: only the antisymmetric drives.
    Antisymmetric,
    /// All pump light in waveguide 1: equal eigenmode amplitudes.
    SingleWaveguide1,
    /// All pump light in waveguide 2: equal magnitude, opposite sign for A.
    SingleWaveguide2,
}

impl PumpConfiguration {
    /// Excitation amplitudes `(gamma, delta)` of the symmetric and
    /// antisymmetric eigenmodes, normalized so `|gamma|^2 + |delta|^2 = 1`.
    ///
    /// The single-waveguide signs follow from inverting the eigenmode
    /// transform on a one-sided pump field.
    pub fn excitation_amplitudes(self) -> (Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        match self {
            PumpConfiguration::Symmetric => (one, zero),
            PumpConfiguration::Antisymmetric => (zero, one),
            PumpConfiguration::SingleWaveguide1 => (r, r),
            PumpConfiguration::SingleWaveguide2 => (r, -r),
        }
    }
}

/// Phase-matching amplitude of a poled region of the given length:
/// `sinc(x) e^{-i x}` with `x = delta_beta * L / 2` and `sinc(0) = 1`.
///
/// Total on finite inputs; `length` is expected positive.
pub fn phase_matching(delta_beta: f64, length: f64) -> Complex64 {
    debug_assert!(length > 0.0);
    let x = delta_beta * length * 0.5;
    let sinc = if x == 0.0 { 1.0 } else { x.sin() / x };
    sinc * Complex64::cis(-x)
}

/// Warnings produced during state assembly; escalation is the caller's call.
#[derive(Debug, Clone, PartialEq)]
pub enum AssemblyWarning {
    /// The grid does not cover the pump envelope: the envelope retains
    /// `edge_ratio` of its peak at the most detuned representable
    /// signal+idler sum (threshold 1e-6).
    PumpTruncation { edge_ratio: f64 },
}

impl std::fmt::Display for AssemblyWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AssemblyWarning::PumpTruncation { edge_ratio } => write!(
                f,
                "pump envelope truncated by the grid: edge value is {edge_ratio:.3e} of peak \
                 (threshold 1e-6); widen the grid span"
            ),
        }
    }
}

/// Normalized two-photon amplitude tensor in the eigenmode basis, indexed
/// `(M, N, signal, idler)` with S -> 0 and A -> 1.
#[derive(Debug, Clone)]
pub struct EigenJSA {
    grid: FrequencyGrid,
    amplitudes: Array4<Complex64>,
    norm_constant: f64,
}

/// Result of assembly: the state plus any physics-validation warnings.
#[derive(Debug, Clone)]
pub struct EigenStateBuild {
    pub state: EigenJSA,
    pub warnings: Vec<AssemblyWarning>,
}

/// Shared shape validation for four-band tensors over a grid.
pub(crate) fn check_tensor_shape(
    grid: &FrequencyGrid,
    amplitudes: &Array4<Complex64>,
) -> Result<()> {
    let expected = (2, 2, grid.n_signal(), grid.n_idler());
    if amplitudes.dim() != expected {
        return Err(Error::TensorShapeMismatch {
            got: amplitudes.dim(),
            n_signal: grid.n_signal(),
            n_idler: grid.n_idler(),
        });
    }
    Ok(())
}

impl EigenJSA {
    /// Builds a state from a raw (unnormalized) amplitude tensor of shape
    /// `(2, 2, n_signal, n_idler)`, normalizing it to unit probability and
    /// recording the squared norm that was divided out.
    pub fn from_raw(grid: FrequencyGrid, mut amplitudes: Array4<Complex64>) -> Result<Self> {
        check_tensor_shape(&grid, &amplitudes)?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * grid.cell_area();
        if !(norm > 0.0) {
            return Err(Error::ZeroNorm);
        }
        let scale = Complex64::new(1.0 / norm.sqrt(), 0.0);
        amplitudes.mapv_inplace(|a| a * scale);
        Ok(Self { grid, amplitudes, norm_constant: norm })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> ArrayView4<'_, Complex64> {
        self.amplitudes.view()
    }

    /// One (M, N) band as a (signal, idler) matrix.
    pub fn slice(&self, m: EigenLabel, n: EigenLabel) -> ArrayView2<'_, Complex64> {
        self.amplitudes.index_axis(ndarray::Axis(0), m.index()).index_axis(ndarray::Axis(0), n.index())
    }

    /// Normalization constant recorded at assembly: the squared norm of the
    /// raw four-band tensor under the grid measure before rescaling.
    pub fn norm_constant(&self) -> f64 {
        self.norm_constant
    }

    /// `sum |amp|^2 * dw_s * dw_i` over all four bands; 1 after assembly.
    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    /// Keeps only the central SA/AS bands (one photon per eigenmode) and
    /// renormalizes: the protocol's target state, exact NOON after the
    /// basis transform.
    pub fn central_band_only(&self) -> Result<EigenJSA> {
        let mut amplitudes = self.amplitudes.clone();
        for band in [(0usize, 0usize), (1, 1)] {
            amplitudes
                .index_axis_mut(ndarray::Axis(0), band.0)
                .index_axis_mut(ndarray::Axis(0), band.1)
                .fill(Complex64::new(0.0, 0.0));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell_area();
        if norm <= 0.0 {
            return Err(Error::EmptyCentralBand);
        }
        let scale = Complex64::new(1.0 / norm.sqrt(), 0.0);
        amplitudes.mapv_inplace(|a| a * scale);
        Ok(EigenJSA { grid: self.grid.clone(), amplitudes, norm_constant: norm })
    }

    pub(crate) fn from_parts(
        grid: FrequencyGrid,
        amplitudes: Array4<Complex64>,
        norm_constant: f64,
    ) -> Self {
        Self { grid, amplitudes, norm_constant }
    }
}

/// Builds the eigenmode-basis two-photon state for a pump envelope and
/// configuration on the given grid, then normalizes it to unit probability.
///
/// The four bands share one mismatch base per grid point; only the `+/-2C`
/// coupling shift and the `gamma`/`delta` weight differ, and the SA and AS
/// bands are identical by construction (the two photons share the
/// generated-band dispersion).
pub fn assemble_eigen_state(
    model: &DispersionModel,
    env: &PumpEnvelope,
    config: PumpConfiguration,
    grid: &FrequencyGrid,
    length: f64,
) -> Result<EigenStateBuild> {
    if length <= 0.0 {
        return Err(Error::NonPositiveLength(length));
    }
    let (gamma, delta) = config.excitation_amplitudes();
    let n_s = grid.n_signal();
    let n_i = grid.n_idler();

    let shift_ss = model.coupling_shift(EigenLabel::S, EigenLabel::S);
    let shift_sa = model.coupling_shift(EigenLabel::S, EigenLabel::A);
    let shift_aa = model.coupling_shift(EigenLabel::A, EigenLabel::A);

    let mut amplitudes = Array4::<Complex64>::zeros((2, 2, n_s, n_i));
    {
        // Split into the four band views once; fill row by row.
        let (mut ss, mut sa, mut as_, mut aa) =
            amplitudes.multi_slice_mut((
                ndarray::s![0, 0, .., ..],
                ndarray::s![0, 1, .., ..],
                ndarray::s![1, 0, .., ..],
                ndarray::s![1, 1, .., ..],
            ));
        for s in 0..n_s {
            let w_s = grid.signal_at(s);
            for i in 0..n_i {
                let w_i = grid.idler_at(i);
                let alpha = env.alpha(w_s, w_i);
                let base = model.mismatch_base(w_s, w_i);
                let central = delta * alpha * phase_matching(base + shift_sa, length);
                ss[[s, i]] = gamma * alpha * phase_matching(base + shift_ss, length);
                sa[[s, i]] = central;
                as_[[s, i]] = central;
                aa[[s, i]] = gamma * alpha * phase_matching(base + shift_aa, length);
            }
        }
    }

    // Sequential reduction keeps the normalization bit-reproducible.
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * grid.cell_area();
    if !(norm > 0.0) {
        return Err(Error::ZeroNorm);
    }
    let scale = Complex64::new(1.0 / norm.sqrt(), 0.0);
    amplitudes.mapv_inplace(|a| a * scale);

    let mut warnings = Vec::new();
    let edge_ratio = envelope_edge_ratio(env, grid);
    if edge_ratio >= 1e-6 {
        warnings.push(AssemblyWarning::PumpTruncation { edge_ratio });
    }

    Ok(EigenStateBuild {
        state: EigenJSA::from_parts(grid.clone(), amplitudes, norm),
        warnings,
    })
}

/// Pump envelope value, relative to its peak, at the most detuned
/// signal+idler sum the grid can represent.
fn envelope_edge_ratio(env: &PumpEnvelope, grid: &FrequencyGrid) -> f64 {
    let sum_lo = grid.signal_at(0) + grid.idler_at(0);
    let sum_hi = grid.signal_at(grid.n_signal() - 1) + grid.idler_at(grid.n_idler() - 1);
    let peak = env.central_frequency();
    let sigma = env.spectral_std();
    let value = |sum: f64| (-((sum - peak) / sigma).powi(2) / 2.0).exp();
    // If the pump center lies outside the covered sum range, the nearer edge
    // already reports the (large) truncation.
    value(sum_lo).max(value(sum_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{Band, BandPolynomial};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const W_DEG: f64 = 1.239_733_820_790_347e15;
    const W_PUMP: f64 = 2.479_467_641_580_694e15;

    fn device_model(coupling: f64) -> DispersionModel {
        let pump = BandPolynomial::new(
            W_PUMP,
            vec![18_077_618.680_337_667, 8.005_538_284_755_65e-9],
        )
        .unwrap();
        let generated = BandPolynomial::new(
            W_DEG,
            vec![8_849_556.770_675_473, 7.338_410_094_359_345_5e-9],
        )
        .unwrap();
        DispersionModel::new(pump, generated, coupling, 16.6e-6, 1).unwrap()
    }

    fn device_envelope() -> PumpEnvelope {
        // 0.32 nm FWHM at 759.7 nm.
        let sigma = crate::units::pump_sigma_from_fwhm_nm(759.7, 0.32);
        PumpEnvelope::new(W_PUMP, sigma, 1.0).unwrap()
    }

    fn device_grid(model: &DispersionModel, env: &PumpEnvelope, n: usize) -> FrequencyGrid {
        GridPolicy { n_signal: n, n_idler: n, span_sigmas: 4.0 }
            .build(model, env, 11e-3)
            .unwrap()
    }

    #[test]
    fn phase_matching_at_zero_mismatch_is_unity() {
        assert_eq!(phase_matching(0.0, 11e-3), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn phase_matching_first_zero() {
        // delta_beta * L / 2 = pi
        let length = 11e-3;
        let db = 2.0 * std::f64::consts::PI / length;
        assert!(phase_matching(db, length).norm() < 1e-12);
    }

    #[test]
    fn phase_matching_quarter_lobe() {
        // x = pi/2 -> (2/pi) e^{-i pi/2} = -(2/pi) i
        let length = 11e-3;
        let db = std::f64::consts::PI / length;
        let got = phase_matching(db, length);
        assert_abs_diff_eq!(got.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(got.im, -std::f64::consts::FRAC_2_PI, epsilon = 1e-15);
    }

    #[test]
    fn pump_alpha_peak_and_one_sigma() {
        let env = PumpEnvelope::new(2.0e15, 1.0e11, 0.7).unwrap();
        assert_eq!(env.alpha(1.0e15, 1.0e15), 0.7);
        let at_sigma = env.alpha(1.0e15, 1.0e15 + 1.0e11);
        assert_abs_diff_eq!(at_sigma, 0.7 * (-0.5f64).exp(), epsilon = 1e-14);
    }

    #[test]
    fn pump_alpha_depends_only_on_the_sum() {
        let env = PumpEnvelope::new(2.0e15, 1.0e11, 1.0).unwrap();
        for d in [0.0, 1.0e9, -3.7e10, 2.2e11] {
            assert_eq!(env.alpha(1.0e15 + d, 1.0e15 - d), env.alpha(1.0e15, 1.0e15));
        }
    }

    #[test]
    fn excitation_amplitude_table() {
        let (g, d) = PumpConfiguration::Symmetric.excitation_amplitudes();
        assert_eq!((g.re, g.im, d.re, d.im), (1.0, 0.0, 0.0, 0.0));
        let (g, d) = PumpConfiguration::Antisymmetric.excitation_amplitudes();
        assert_eq!((g.re, d.re), (0.0, 1.0));
        let (g, d) = PumpConfiguration::SingleWaveguide1.excitation_amplitudes();
        assert_abs_diff_eq!(g.re, 0.70711, epsilon = 1e-5);
        assert_abs_diff_eq!(d.re, 0.70711, epsilon = 1e-5);
        let (g, d) = PumpConfiguration::SingleWaveguide2.excitation_amplitudes();
        assert_abs_diff_eq!(g.re, 0.70711, epsilon = 1e-5);
        assert_abs_diff_eq!(d.re, -0.70711, epsilon = 1e-5);
        for cfg in [
            PumpConfiguration::Symmetric,
            PumpConfiguration::Antisymmetric,
            PumpConfiguration::SingleWaveguide1,
            PumpConfiguration::SingleWaveguide2,
        ] {
            let (g, d) = cfg.excitation_amplitudes();
            assert_abs_diff_eq!(g.norm_sqr() + d.norm_sqr(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn grid_validation() {
        assert_eq!(FrequencyGrid::square(1.0e15, 1.0e12, 1).unwrap_err(), Error::GridTooSmall(1));
        assert_eq!(FrequencyGrid::square(1.0e15, 0.0, 11).unwrap_err(), Error::InvalidGridSpan);
        // Span larger than the center would produce non-positive frequencies.
        assert_eq!(FrequencyGrid::square(1.0e12, 2.0e12, 11).unwrap_err(), Error::InvalidGridSpan);
    }

    #[test]
    fn grid_from_axes_accepts_uniform_and_rejects_ragged() {
        let axis: Vec<f64> = (0..101).map(|k| 1.2e15 + k as f64 * 1.7e10).collect();
        let grid = FrequencyGrid::from_axes(&axis, &axis).unwrap();
        assert!(grid.is_square());
        assert_abs_diff_eq!(grid.d_signal(), 1.7e10, epsilon = 1.0);

        let mut ragged = axis.clone();
        ragged[50] += 3.0e9;
        assert!(matches!(
            FrequencyGrid::from_axes(&ragged, &axis).unwrap_err(),
            Error::GridNotUniform { .. }
        ));

        let mut decreasing = axis.clone();
        decreasing.reverse();
        assert_eq!(
            FrequencyGrid::from_axes(&decreasing, &axis).unwrap_err(),
            Error::GridNotIncreasing
        );
    }

    #[test]
    fn grid_policy_covers_pump_and_bands() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 401);
        // No truncation warning territory: edge sum detuning over sigma.
        let edge = envelope_edge_ratio(&env, &grid);
        assert!(edge < 1e-6, "edge ratio {edge}");
        // The side bands at +/-2C in mismatch must fall inside the grid.
        let slope = (model.beta_slope(Band::Pump, W_PUMP).unwrap()
            - model.beta_slope(Band::Generated, W_DEG).unwrap())
        .abs();
        let u_band = 2.0 * 358.0 / slope;
        let u_cov = grid.signal_at(grid.n_signal() - 1) - grid.signal_at(0)
            + grid.idler_at(grid.n_idler() - 1) - grid.idler_at(0);
        assert!(u_cov / 2.0 > u_band, "u_cov/2 = {:.3e}, band at {:.3e}", u_cov / 2.0, u_band);
    }

    #[test]
    fn symmetric_pump_zeroes_the_cross_bands() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 41);
        let build =
            assemble_eigen_state(&model, &env, PumpConfiguration::Symmetric, &grid, 11e-3)
                .unwrap();
        assert!(build.warnings.is_empty());
        let state = build.state;
        assert!(state.slice(EigenLabel::S, EigenLabel::A).iter().all(|a| a.norm() == 0.0));
        assert!(state.slice(EigenLabel::A, EigenLabel::S).iter().all(|a| a.norm() == 0.0));
        // And the converse for antisymmetric pumping.
        let state = assemble_eigen_state(&model, &env, PumpConfiguration::Antisymmetric, &grid, 11e-3)
            .unwrap()
            .state;
        assert!(state.slice(EigenLabel::S, EigenLabel::S).iter().all(|a| a.norm() == 0.0));
        assert!(state.slice(EigenLabel::A, EigenLabel::A).iter().all(|a| a.norm() == 0.0));
    }

    #[test]
    fn zero_coupling_makes_all_bands_proportional() {
        let model = device_model(0.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 31);
        let state =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap()
                .state;
        // gamma = delta here, so all four slices must be identical.
        let ss = state.slice(EigenLabel::S, EigenLabel::S);
        for m in EigenLabel::ALL {
            for n in EigenLabel::ALL {
                let band = state.slice(m, n);
                for (a, b) in band.iter().zip(ss.iter()) {
                    assert!((a - b).norm() <= 1e-15 * b.norm().max(1e-300));
                }
            }
        }
    }

    #[test]
    fn side_band_leakage_ratio_is_sinc_of_coupling_times_length() {
        // Pump on the central band: at the degenerate grid point the SS
        // amplitude relative to SA is |sinc(C L)| (equal weights).
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 41); // odd n: center point on-grid
        let state =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap()
                .state;
        let c = (grid.n_signal() - 1) / 2;
        let ratio = state.slice(EigenLabel::S, EigenLabel::S)[[c, c]].norm()
            / state.slice(EigenLabel::S, EigenLabel::A)[[c, c]].norm();
        // |sinc(358 * 0.011)| = |sin(3.938)/3.938|, frozen from independent
        // evaluation.
        assert_abs_diff_eq!(ratio, 0.181_525_759_500_702_6, epsilon = 1e-9);
    }

    #[test]
    fn normalization_and_recorded_constant() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 101);
        let state =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap()
                .state;
        assert!((state.total_probability() - 1.0).abs() <= 1e-9);
        assert!(state.norm_constant() > 0.0);
    }

    #[test]
    fn exchange_symmetry_is_bitwise_on_square_grids() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 41);
        let state =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap()
                .state;
        for m in EigenLabel::ALL {
            for n in EigenLabel::ALL {
                let mn = state.slice(m, n);
                let nm = state.slice(n, m);
                for s in 0..grid.n_signal() {
                    for i in 0..grid.n_idler() {
                        assert_eq!(mn[[s, i]], nm[[i, s]]);
                    }
                }
            }
        }
    }

    #[test]
    fn doubling_length_narrows_lobes_and_suppresses_leakage() {
        // Main lobe half-width in mismatch is 2 pi / L; the side-band
        // leakage |sinc(C L)| drops when L doubles.
        let c = 358.0;
        let l = 11e-3;
        let leak = |len: f64| phase_matching(2.0 * c, len).norm();
        assert!(leak(2.0 * l) < leak(l));
        assert_abs_diff_eq!(leak(l), 0.181_525_759_500_702_6, epsilon = 1e-12);
        assert_abs_diff_eq!(leak(2.0 * l), 0.126_937_227_726_247_6, epsilon = 1e-12);
        // First zero moves from 2 pi / L to pi / L.
        assert!(phase_matching(2.0 * std::f64::consts::PI / l, l).norm() < 1e-12);
        assert!(phase_matching(std::f64::consts::PI / l, 2.0 * l).norm() < 1e-12);
    }

    #[test]
    fn truncation_warning_fires_on_a_too_narrow_grid() {
        let model = device_model(358.0);
        let env = device_envelope();
        // One-sigma span: plenty of envelope left at the edges.
        let grid = GridPolicy { n_signal: 21, n_idler: 21, span_sigmas: 0.5 }
            .build(&model, &env, 11e-3)
            .unwrap();
        let build =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap();
        assert!(matches!(
            build.warnings.as_slice(),
            [AssemblyWarning::PumpTruncation { edge_ratio }] if *edge_ratio >= 1e-6
        ));
    }

    #[test]
    fn degenerate_inputs_error() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 11);
        assert_eq!(
            assemble_eigen_state(&model, &env, PumpConfiguration::Symmetric, &grid, 0.0)
                .unwrap_err(),
            Error::NonPositiveLength(0.0)
        );
        assert_eq!(PumpEnvelope::new(W_PUMP, 0.0, 1.0).unwrap_err(),
            Error::NonPositiveSpectralStd(0.0));
    }

    #[test]
    fn central_band_only_keeps_sa_as_and_renormalizes() {
        let model = device_model(358.0);
        let env = device_envelope();
        let grid = device_grid(&model, &env, 41);
        let full =
            assemble_eigen_state(&model, &env, PumpConfiguration::SingleWaveguide1, &grid, 11e-3)
                .unwrap()
                .state;
        let central = full.central_band_only().unwrap();
        assert!((central.total_probability() - 1.0).abs() <= 1e-9);
        assert!(central.slice(EigenLabel::S, EigenLabel::S).iter().all(|a| a.norm() == 0.0));
        assert!(central.slice(EigenLabel::A, EigenLabel::A).iter().all(|a| a.norm() == 0.0));
        // Symmetric pumping has no central band at all.
        let sym = assemble_eigen_state(&model, &env, PumpConfiguration::Symmetric, &grid, 11e-3)
            .unwrap()
            .state;
        assert_eq!(sym.central_band_only().unwrap_err(), Error::EmptyCentralBand);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn normalization_holds_for_assorted_pumps(
            fwhm_nm in 0.05..0.8f64,
            which in 0usize..4,
            coupling in 0.0..2.0e3f64,
        ) {
            let model = device_model(coupling);
            let sigma = crate::units::pump_sigma_from_fwhm_nm(759.7, fwhm_nm);
            let env = PumpEnvelope::new(W_PUMP, sigma, 1.0).unwrap();
            let grid = device_grid(&model, &env, 61);
            let config = [
                PumpConfiguration::Symmetric,
                PumpConfiguration::Antisymmetric,
                PumpConfiguration::SingleWaveguide1,
                PumpConfiguration::SingleWaveguide2,
            ][which];
            let state = assemble_eigen_state(&model, &env, config, &grid, 11e-3)
                .unwrap().state;
            prop_assert!((state.total_probability() - 1.0).abs() <= 1e-9);
            // SA and AS slices always match.
            let sa = state.slice(EigenLabel::S, EigenLabel::A);
            let as_ = state.slice(EigenLabel::A, EigenLabel::S);
            for (a, b) in sa.iter().zip(as_.iter()) {
                prop_assert_eq!(a, b);
            }
        }
    }
}
