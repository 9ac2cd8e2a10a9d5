//! Free-space spreading and vegetation attenuation.

use super::EmError;
use crate::C0;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Friis amplitude λ/(4πd) · e^{−jkd} between isotropic antennas.
pub fn free_space_gain(d: f64, f: f64) -> Result<Complex64, EmError> {
    if d <= 0.0 {
        return Err(EmError::NonPositiveExtent(d));
    }
    if f <= 0.0 {
        return Err(EmError::NonPositiveExtent(f));
    }
    let lambda = C0 / f;
    let k = 2.0 * PI / lambda;
    Ok(Complex64::from_polar(lambda / (4.0 * PI * d), -k * d))
}

/// Free-space path loss 20 log10(4πd/λ) in dB.
pub fn free_space_loss_db(d: f64, f: f64) -> Result<f64, EmError> {
    if d <= 0.0 {
        return Err(EmError::NonPositiveExtent(d));
    }
    if f <= 0.0 {
        return Err(EmError::NonPositiveExtent(f));
    }
    let lambda = C0 / f;
    Ok(20.0 * (4.0 * PI * d / lambda).log10())
}

/// Attenuation in dB for a ray crossing `length_m` of a vegetation volume
/// with specific attenuation `veg_atten` dB/m.
pub fn vegetation_loss_db(length_m: f64, veg_atten: f64) -> f64 {
    debug_assert!(length_m >= 0.0 && veg_atten >= 0.0);
    veg_atten * length_m
}
