//! Wavelength/bandwidth conversions.
//!
//! All internal computations use angular frequency in rad/s; wavelengths in
//! nm appear only at the configuration and reporting boundary.

/// Vacuum speed of light in m/s (exact by definition).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Converts a vacuum wavelength in nm to angular frequency in rad/s.
pub fn angular_frequency_from_wavelength_nm(lambda_nm: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / (lambda_nm * 1e-9)
}

/// Converts an angular frequency in rad/s to a vacuum wavelength in nm.
pub fn wavelength_nm_from_angular_frequency(omega: f64) -> f64 {
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / omega * 1e9
}

/// Gaussian standard deviation corresponding to a full width at half maximum.
pub fn gaussian_sigma_from_fwhm(fwhm: f64) -> f64 {
    fwhm / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt())
}

/// Pump spectral standard deviation in rad/s from a FWHM quoted in nm.
///
/// Uses the first-order |dw/dlambda| = 2 pi c / lambda^2 at the pump center;
/// exact for the sub-nm bandwidths this model targets.
pub fn pump_sigma_from_fwhm_nm(center_nm: f64, fwhm_nm: f64) -> f64 {
    let dw_dlam = 2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / (center_nm * 1e-9).powi(2);
    gaussian_sigma_from_fwhm(fwhm_nm * 1e-9 * dw_dlam)
}
