//! Propagation constants, eigenmode splitting, and phase mismatches.
//!
//! The coupled two-waveguide system hybridizes the generated band into a
//! symmetric (S) and an antisymmetric (A) eigenmode with split propagation
//! constants `beta_S/A = beta0 -/+ C`. The pump band is assumed uncoupled.
//! Quasi-phase matching enters the mismatch as `-m 2 pi / Lambda`.

use crate::error::{Error, Result};

/// Selects which dispersion band an evaluation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Band {
    Pump,
    Generated,
}

/// The two eigenmodes of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EigenLabel {
    /// Symmetric combination, `beta0 - C`.
    S,
    /// Antisymmetric combination, `beta0 + C`.
    A,
}

impl EigenLabel {
    pub const ALL: [EigenLabel; 2] = [EigenLabel::S, EigenLabel::A];

    /// Tensor index used throughout the crate: S -> 0, A -> 1.
    pub fn index(self) -> usize {
        match self {
            EigenLabel::S => 0,
            EigenLabel::A => 1,
        }
    }

    /// Sign with which the coupling enters the phase mismatch.
    ///
    /// `delta_beta` subtracts `beta_S = beta0 - C`, so an S photon
    /// contributes `+C` to the mismatch and an A photon `-C`.
    fn coupling_sign(self) -> f64 {
        match self {
            EigenLabel::S => 1.0,
            EigenLabel::A => -1.0,
        }
    }
}

/// Polynomial propagation constant around a reference frequency:
/// `beta(w) = sum_k c_k (w - w_ref)^k`, coefficients in `m^-1 (s/rad)^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandPolynomial {
    reference_frequency: f64,
    coefficients: Vec<f64>,
}

impl BandPolynomial {
    /// A polynomial needs at least the constant term, and propagation
    /// constants are positive, so `c0 > 0`.
    pub fn new(reference_frequency: f64, coefficients: Vec<f64>) -> Result<Self> {
        if reference_frequency <= 0.0 {
            return Err(Error::NonPositiveFrequency(reference_frequency));
        }
        let c0 = *coefficients.first().ok_or(Error::EmptyBandPolynomial)?;
        if c0 <= 0.0 {
            return Err(Error::NonPositiveBandConstant(c0));
        }
        Ok(Self { reference_frequency, coefficients })
    }

    pub fn reference_frequency(&self) -> f64 {
        self.reference_frequency
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Horner evaluation at angular frequency `omega`.
    pub fn eval(&self, omega: f64) -> f64 {
        let x = omega - self.reference_frequency;
        self.coefficients.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    /// d beta / d omega at `omega` (group slowness), by Horner on the
    /// derivative coefficients.
    pub fn slope(&self, omega: f64) -> f64 {
        let x = omega - self.reference_frequency;
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, c)| acc * x + k as f64 * c)
    }
}

/// Full dispersion description of the device: pump and generated bands,
/// coupling strength, and poling grating.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionModel {
    pump_band: BandPolynomial,
    generated_band: BandPolynomial,
    coupling: f64,
    grating_period: f64,
    grating_order: u32,
}

impl DispersionModel {
    pub fn new(
        pump_band: BandPolynomial,
        generated_band: BandPolynomial,
        coupling: f64,
        grating_period: f64,
        grating_order: u32,
    ) -> Result<Self> {
        if coupling < 0.0 {
            return Err(Error::NegativeCoupling(coupling));
        }
        if grating_period <= 0.0 {
            return Err(Error::NonPositiveGratingPeriod(grating_period));
        }
        if grating_order == 0 {
            return Err(Error::ZeroGratingOrder);
        }
        Ok(Self { pump_band, generated_band, coupling, grating_period, grating_order })
    }

    pub fn pump_band(&self) -> &BandPolynomial {
        &self.pump_band
    }

    pub fn generated_band(&self) -> &BandPolynomial {
        &self.generated_band
    }

    /// Coupling parameter C in m^-1.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn grating_period(&self) -> f64 {
        self.grating_period
    }

    pub fn grating_order(&self) -> u32 {
        self.grating_order
    }

    /// Grating wavevector contribution `m 2 pi / Lambda` in m^-1.
    pub fn grating_wavenumber(&self) -> f64 {
        self.grating_order as f64 * 2.0 * std::f64::consts::PI / self.grating_period
    }

    fn band(&self, band: Band) -> &BandPolynomial {
        match band {
            Band::Pump => &self.pump_band,
            Band::Generated => &self.generated_band,
        }
    }

    /// Uncoupled propagation constant of the selected band.
    pub fn beta_uncoupled(&self, band: Band, omega: f64) -> Result<f64> {
        if omega <= 0.0 {
            return Err(Error::NonPositiveFrequency(omega));
        }
        Ok(self.band(band).eval(omega))
    }

    /// d beta / d omega of the selected band, used by grid sizing.
    pub fn beta_slope(&self, band: Band, omega: f64) -> Result<f64> {
        if omega <= 0.0 {
            return Err(Error::NonPositiveFrequency(omega));
        }
        Ok(self.band(band).slope(omega))
    }

    /// Eigenmode propagation constant of the generated band,
    /// `beta0(w) - C` for S and `beta0(w) + C` for A.
    pub fn beta_eigen(&self, mode: EigenLabel, omega: f64) -> Result<f64> {
        let beta0 = self.beta_uncoupled(Band::Generated, omega)?;
        Ok(beta0 - mode.coupling_sign() * self.coupling)
    }

    /// Eigenmode-independent part of the phase mismatch:
    /// `beta_p(w_s + w_i) - (beta0(w_s) + beta0(w_i)) - m 2 pi / Lambda`.
    ///
    /// The generated-band terms are grouped symmetrically so the value is
    /// bitwise invariant under swapping signal and idler.
    pub(crate) fn mismatch_base(&self, omega_s: f64, omega_i: f64) -> f64 {
        let beta_p = self.pump_band.eval(omega_s + omega_i);
        let beta_gen = self.generated_band.eval(omega_s) + self.generated_band.eval(omega_i);
        beta_p - beta_gen - self.grating_wavenumber()
    }

    /// Coupling offset of the (M, N) band relative to the central SA/AS
    /// band: +2C for SS, 0 for SA/AS, -2C for AA.
    pub(crate) fn coupling_shift(&self, m: EigenLabel, n: EigenLabel) -> f64 {
        (m.coupling_sign() + n.coupling_sign()) * self.coupling
    }

    /// Phase mismatch of the (M, N) eigenmode pair with quasi-phase
    /// matching: `beta_p(w_s + w_i) - beta_M(w_s) - beta_N(w_i) - m 2 pi / Lambda`
    /// with the pump frequency fixed by energy conservation.
    ///
    /// Adding the coupling as a single `+/-2C / 0` shift on a shared base
    /// term keeps the inter-band offsets exact to roundoff, which the
    /// band-splitting invariants rely on.
    pub fn delta_beta(
        &self,
        m: EigenLabel,
        n: EigenLabel,
        omega_s: f64,
        omega_i: f64,
    ) -> Result<f64> {
        if omega_s <= 0.0 {
            return Err(Error::NonPositiveFrequency(omega_s));
        }
        if omega_i <= 0.0 {
            return Err(Error::NonPositiveFrequency(omega_i));
        }
        Ok(self.mismatch_base(omega_s, omega_i) + self.coupling_shift(m, n))
    }
}
