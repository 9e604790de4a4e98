//! Two-photon state engineering in a pair of coupled, periodically poled
//! waveguides.
//!
//! The crate models parametric down-conversion in a directional-coupler
//! geometry where the generated (telecom) band hybridizes into symmetric and
//! antisymmetric eigenmodes with split propagation constants. The split
//! produces three spectrally separated phase-matching bands, so the pump
//! wavelength selects which eigenmode pair the photons occupy. Selecting the
//! central band places one photon in each eigenmode, and the change of basis
//! back to the waveguide modes cancels the cross-waveguide amplitudes
//! (Hong-Ou-Mandel interference in the transform itself), leaving a
//! postselection-free two-photon NOON state across the two waveguides.
//!
//! Layout:
//! - [`dispersion`]: propagation constants, eigenmode splitting, phase
//!   mismatches including the poling grating vector.
//! - [`pdc_state`]: frequency grids, pump envelope, and assembly of the
//!   joint spectral amplitude in the eigenmode basis.
//! - [`basis_transforms`]: eigenmode-to-waveguide change of basis and
//!   two-mode interferometer unitaries.
//! - [`observables`]: coincidence rates, rate fidelity, pump-wavelength and
//!   phase scans, visibilities.
//! - [`oracles`]: independent brute-force checks of the analytic core.

pub mod basis_transforms;
pub mod dispersion;
pub mod error;
pub mod observables;
pub mod oracles;
pub mod pdc_state;
pub mod units;

pub use basis_transforms::{
    apply_two_mode_unitary, eigen_to_waveguide, splitter_with_phase, TwoModeUnitary,
    WaveguideJSA, WaveguideLabel,
};
pub use dispersion::{Band, BandPolynomial, DispersionModel, EigenLabel};
pub use error::{Error, Result};
pub use observables::{
    coincidence_rates, coincidence_rates_renormalized, phase_scan, pump_scan, rate_fidelity,
    single_photon_fringe, visibility, CoincidenceRates, PumpScanReport, ScanResult,
};
pub use oracles::{fock_two_photon_oracle, phi_numeric, run_all_oracles, OracleReport};
pub use pdc_state::{
    assemble_eigen_state, phase_matching, AssemblyWarning, EigenJSA, EigenStateBuild,
    FrequencyGrid, GridPolicy, PumpConfiguration, PumpEnvelope,
};
