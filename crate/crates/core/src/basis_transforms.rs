//! Change of basis between eigenmode and waveguide amplitudes, and the
//! two-mode interferometer unitaries applied downstream of the chip.
//!
//! The eigenmode transform `a_S/A = (b_1 +/- b_2) / sqrt(2)` acts on both
//! photons; on the two-photon tensor that is the mode-matrix contraction
//! `out(j,k) = sum_{p,q} T(p,j) T(q,k) in(p,q)` applied grid-pointwise.
//! The same contraction with an arbitrary unitary models a beam splitter
//! plus phase plate on the two waveguide outputs.

use ndarray::{Array4, ArrayView2, ArrayView4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pdc_state::{check_tensor_shape, EigenJSA, FrequencyGrid};

/// The two waveguides, in the detection basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveguideLabel {
    W1,
    W2,
}

impl WaveguideLabel {
    pub const ALL: [WaveguideLabel; 2] = [WaveguideLabel::W1, WaveguideLabel::W2];

    pub fn index(self) -> usize {
        match self {
            WaveguideLabel::W1 => 0,
            WaveguideLabel::W2 => 1,
        }
    }
}

/// Two-photon amplitude tensor in the waveguide basis, indexed
/// `(j, k, signal, idler)` with waveguide 1 -> 0 and waveguide 2 -> 1.
#[derive(Debug, Clone)]
pub struct WaveguideJSA {
    grid: FrequencyGrid,
    amplitudes: Array4<Complex64>,
}

impl WaveguideJSA {
    /// Wraps an explicit amplitude tensor; the shape must be
    /// `(2, 2, n_signal, n_idler)`.
    pub fn new(grid: FrequencyGrid, amplitudes: Array4<Complex64>) -> Result<Self> {
        check_tensor_shape(&grid, &amplitudes)?;
        Ok(Self { grid, amplitudes })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn amplitudes(&self) -> ArrayView4<'_, Complex64> {
        self.amplitudes.view()
    }

    pub fn slice(&self, j: WaveguideLabel, k: WaveguideLabel) -> ArrayView2<'_, Complex64> {
        self.amplitudes
            .index_axis(ndarray::Axis(0), j.index())
            .index_axis(ndarray::Axis(0), k.index())
    }

    /// `sum |amp|^2 * dw_s * dw_i` over all four slices.
    pub fn total_probability(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    pub(crate) fn from_parts(grid: FrequencyGrid, amplitudes: Array4<Complex64>) -> Self {
        Self { grid, amplitudes }
    }
}

/// A 2x2 unitary acting on the two path modes; validated at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeUnitary {
    entries: [[Complex64; 2]; 2],
}

impl TwoModeUnitary {
    /// Accepts a matrix with `max |U U^dag - I|` entrywise below 1e-12.
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let deviation = unitarity_deviation(&entries);
        if deviation > 1e-12 {
            return Err(Error::NotUnitary(deviation));
        }
        Ok(Self { entries })
    }

    /// For matrices unitary by algebraic construction.
    fn new_unchecked(entries: [[Complex64; 2]; 2]) -> Self {
        debug_assert!(unitarity_deviation(&entries) <= 1e-12);
        Self { entries }
    }

    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new_unchecked([[one, zero], [zero, one]])
    }

    /// `diag(1, e^{i phi})`: a phase plate in the second path.
    pub fn phase_shift(phi: f64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::new_unchecked([[one, zero], [zero, Complex64::cis(phi)]])
    }

    /// Symmetric 50:50 splitter `[[1, i], [i, 1]] / sqrt(2)`.
    pub fn splitter_50_50() -> Self {
        let t = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let it = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        Self::new_unchecked([[t, it], [it, t]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.entries
    }

    /// Matrix product `self * rhs`.
    pub fn compose(&self, rhs: &TwoModeUnitary) -> Self {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (r, row) in out.iter_mut().enumerate() {
            for (c, entry) in row.iter_mut().enumerate() {
                *entry = self.entries[r][0] * rhs.entries[0][c]
                    + self.entries[r][1] * rhs.entries[1][c];
            }
        }
        Self::new_unchecked(out)
    }
}

fn unitarity_deviation(entries: &[[Complex64; 2]; 2]) -> f64 {
    let mut max = 0.0f64;
    for r in 0..2 {
        for c in 0..2 {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..2 {
                acc += entries[r][k] * entries[c][k].conj();
            }
            let target = if r == c { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            max = max.max((acc - target).norm());
        }
    }
    max
}

/// Phase plate in path 2 followed by the symmetric 50:50 splitter:
/// the interferometer used for the fringe measurements.
pub fn splitter_with_phase(phi: f64) -> TwoModeUnitary {
    TwoModeUnitary::splitter_50_50().compose(&TwoModeUnitary::phase_shift(phi))
}

/// Eigenmode-to-waveguide matrix: column p of `T` maps eigenmode p onto the
/// waveguides, `a_S -> (b1 + b2)/sqrt(2)`, `a_A -> (b1 - b2)/sqrt(2)`.
/// `T` is real, symmetric, and its own inverse.
const FRAC: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn eigen_waveguide_matrix() -> [[Complex64; 2]; 2] {
    let t = Complex64::new(FRAC, 0.0);
    [[t, t], [t, -t]]
}

/// Grid-pointwise two-photon mode contraction
/// `out(j,k) = sum_{p,q} m(j,p) m(k,q) in(p,q)`.
///
/// Terms accumulate in a fixed (p,q) order so that exactly opposite
/// coefficient pairs cancel to zero rather than to roundoff; the
/// Hong-Ou-Mandel cancellation of equal SA/AS amplitudes is exact.
pub(crate) fn contract_pair(
    tensor: ArrayView4<'_, Complex64>,
    matrix: &[[Complex64; 2]; 2],
) -> Array4<Complex64> {
    let (_, _, n_s, n_i) = tensor.dim();
    let mut out = Array4::<Complex64>::zeros((2, 2, n_s, n_i));
    for j in 0..2 {
        for k in 0..2 {
            // Coefficients of the four input bands for this output band.
            let coeff: Vec<Complex64> = (0..2)
                .flat_map(|p| (0..2).map(move |q| (p, q)))
                .map(|(p, q)| matrix[j][p] * matrix[k][q])
                .collect();
            let mut dst = out
                .index_axis_mut(ndarray::Axis(0), j)
                .index_axis_mut(ndarray::Axis(0), k);
            for s in 0..n_s {
                for i in 0..n_i {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (idx, (p, q)) in
                        (0..2).flat_map(|p| (0..2).map(move |q| (p, q))).enumerate()
                    {
                        acc += coeff[idx] * tensor[[p, q, s, i]];
                    }
                    dst[[s, i]] = acc;
                }
            }
        }
    }
    out
}

/// Rewrites an eigenmode-basis state in the waveguide basis. Probability is
/// preserved; equal SA/AS bands produce identically zero cross-waveguide
/// amplitudes and opposite-sign b1b1/b2b2 amplitudes (the NOON structure).
pub fn eigen_to_waveguide(state: &EigenJSA) -> WaveguideJSA {
    let out = contract_pair(state.amplitudes(), &eigen_waveguide_matrix());
    WaveguideJSA::from_parts(state.grid().clone(), out)
}

/// Applies a two-mode unitary to both photons of a waveguide-basis state.
pub fn apply_two_mode_unitary(state: &WaveguideJSA, u: &TwoModeUnitary) -> WaveguideJSA {
    let out = contract_pair(state.amplitudes.view(), u.entries());
    WaveguideJSA::from_parts(state.grid.clone(), out)
}
