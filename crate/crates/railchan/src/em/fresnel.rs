//! Fresnel reflection at an air-to-material half-space.

use super::{ComplexPermittivity, EmError};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

/// Amplitude reflection coefficients (γ_soft, γ_hard) for a plane wave
/// incident from air onto a homogeneous half-space with complex relative
/// permittivity ε, at angle `theta_i` from the surface normal.
///
/// Soft is the perpendicular (s / TE) polarization with the electric field
/// normal to the plane of incidence; hard is the parallel (p / TM)
/// polarization. With ε = ε′ − jε″ the principal square root keeps
/// Re√(ε − sin²θ) ≥ 0, so the near-PEC limit (huge loss tangent) is
/// numerically stable.
pub fn fresnel(
    eps: ComplexPermittivity,
    theta_i: f64,
) -> Result<(Complex64, Complex64), EmError> {
    if !(0.0..FRAC_PI_2).contains(&theta_i) {
        return Err(EmError::IncidenceOutOfRange(theta_i));
    }
    let e = eps.value();
    let cos_t = theta_i.cos();
    let sin2 = theta_i.sin().powi(2);
    let root = (e - Complex64::new(sin2, 0.0)).sqrt();
    let gamma_soft = (Complex64::new(cos_t, 0.0) - root) / (Complex64::new(cos_t, 0.0) + root);
    let gamma_hard = (e * cos_t - root) / (e * cos_t + root);
    Ok((gamma_soft, gamma_hard))
}
