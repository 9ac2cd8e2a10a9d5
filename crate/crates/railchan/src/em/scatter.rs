//! Single-lobe directive scattering model.

use super::EmError;
use num_complex::Complex64;
use rand::Rng;

/// Scattered-path amplitude from one surface tile under the single-lobe
/// directive model, with the lobe centred on the specular direction:
///
/// |a|² = (λ/4π)² S² · A √(cosθ_i cosθ_s) / (r_i² r_s²) · ((1+cosψ_R)/2)^α_R
///
/// and phase −k(r_i + r_s) plus a uniform random term drawn from `rng`.
/// The geometric mean of the incidence and scattering cosines keeps the
/// model reciprocal under exchange of the incoming and outgoing rays (it
/// reduces to the plain cosθ_i form whenever θ_i = θ_s).
///
/// `theta_i`/`theta_s` are the incidence/scattering angles from the surface
/// normal, `psi_r` the angle of the outgoing ray from the specular
/// direction, `tile_area` in m², `r_i`/`r_s` the distances from source to
/// tile and tile to receiver, `k` the wavenumber.
#[allow(clippy::too_many_arguments)]
pub fn scatter_gain<R: Rng + ?Sized>(
    theta_i: f64,
    theta_s: f64,
    psi_r: f64,
    scatter_s: f64,
    alpha_r: u32,
    tile_area: f64,
    r_i: f64,
    r_s: f64,
    k: f64,
    rng: &mut R,
) -> Result<Complex64, EmError> {
    if r_i <= 0.0 {
        return Err(EmError::NonPositiveExtent(r_i));
    }
    if r_s <= 0.0 {
        return Err(EmError::NonPositiveExtent(r_s));
    }
    if tile_area <= 0.0 {
        return Err(EmError::NonPositiveExtent(tile_area));
    }
    let lobe = ((1.0 + psi_r.cos()) / 2.0).max(0.0).powi(alpha_r as i32);
    let cos_term = (theta_i.cos().max(0.0) * theta_s.cos().max(0.0)).sqrt();
    let lambda_over_4pi = 2.0 * std::f64::consts::PI / k / (4.0 * std::f64::consts::PI);
    let power = lambda_over_4pi.powi(2) * scatter_s * scatter_s * tile_area * cos_term
        / (r_i * r_i * r_s * r_s)
        * lobe;
    let phase = -k * (r_i + r_s) + rng.gen_range(0.0..std::f64::consts::TAU);
    Ok(Complex64::from_polar(power.sqrt(), phase))
}
