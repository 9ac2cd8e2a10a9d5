//! Single wedge diffraction.
//!
//! For each diffracting edge the Fermat point (minimizing the total path
//! length over the edge segment, which enforces the Keller cone) is found
//! in closed form from the unfolded geometry. Paths whose Fermat point
//! falls outside the open edge segment are dropped; corner diffraction is
//! not modeled, and neither are mixed reflection-diffraction chains.

use super::occlusion::segment_visible;
use super::polarization::PolarizationChain;
use super::{path_angles, path_length, Interaction, PropagationPath, TraceConfig};
use crate::em::{fresnel, free_space_gain, utd_coefficient, UtdGeometry};
use crate::geom::Vec3;
use crate::scene::{Scene, Wedge};
use crate::C0;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Fermat point parameter along the edge for tx and rx: the path length
/// |tx - p| + |p - rx| is minimized where the point divides the edge
/// projection in proportion to the radial distances.
fn fermat_param(w: &Wedge, tx: Vec3, rx: Vec3) -> Option<f64> {
    let e = w.edge_dir;
    let len = w.a.dist(w.b);
    let a_par = (tx - w.a).dot(e);
    let b_par = (rx - w.a).dot(e);
    let ra = ((tx - w.a) - e * a_par).norm();
    let rb = ((rx - w.a) - e * b_par).norm();
    if ra < 1e-9 || rb < 1e-9 {
        return None; // endpoint on the edge line
    }
    let z = (a_par * rb + b_par * ra) / (ra + rb);
    if z <= 1e-9 || z >= len - 1e-9 {
        return None;
    }
    Some(z)
}

pub(super) fn diffraction_paths(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Vec<PropagationPath> {
    let k = cfg.wavenumber();
    let mut out = Vec::new();
    for (widx, w) in scene.wedges.iter().enumerate() {
        let Some(z) = fermat_param(w, tx, rx) else { continue };
        let q = w.a + w.edge_dir * z;

        let phi_inc = w.angle_of(tx - q);
        let phi_dif = w.angle_of(rx - q);
        let n_ext = w.n();
        let tol = 1e-9;
        if phi_inc > n_ext * PI + tol || phi_dif > n_ext * PI + tol {
            continue; // inside the wedge material
        }

        let skip = [w.face_o, w.face_n];
        if !segment_visible(scene, tx, q, &skip) || !segment_visible(scene, q, rx, &skip) {
            continue;
        }

        let s_inc = tx.dist(q);
        let s_dif = q.dist(rx);
        let d_in = (q - tx) / s_inc;
        let d_out = (rx - q) / s_dif;
        let beta0 = d_in.dot(w.edge_dir).clamp(-1.0, 1.0).acos();
        // Keller cone from the Fermat construction; guard numerically
        let beta_out = d_out.dot(w.edge_dir).clamp(-1.0, 1.0).acos();
        if (beta0 - beta_out).abs() > 1e-6 {
            continue;
        }

        // heuristic face coefficients: Fresnel at the grazing angles of the
        // incident ray off the o-face and the diffracted ray off the n-face
        let graze_o = phi_inc.min(FRAC_PI_2);
        let graze_n = (n_ext * PI - phi_dif).min(FRAC_PI_2);
        let face_eps = |face: u32| {
            scene
                .surface(face)
                .map(|s| scene.material_of(s).permittivity())
                .unwrap_or(crate::em::ComplexPermittivity::new(1.0, 0.0))
        };
        let theta_from_graze = |g: f64| (FRAC_PI_2 - g).clamp(0.0, FRAC_PI_2 - 1e-9);
        let Ok(r_o) = fresnel(face_eps(w.face_o), theta_from_graze(graze_o)) else { continue };
        let Ok(r_n) = fresnel(face_eps(w.face_n), theta_from_graze(graze_n)) else { continue };

        let geometry = UtdGeometry { n: n_ext, k, phi_inc, phi_dif, beta0, s_inc, s_dif };
        let Ok(dyadic) = utd_coefficient(&geometry, r_o, r_n) else { continue };

        // edge-fixed bases: phi-hat transverse to the edge-fixed plane of
        // incidence, beta-hat completing the triad
        let cross_in = w.edge_dir.cross(d_in);
        let cross_out = w.edge_dir.cross(d_out);
        if cross_in.norm() < 1e-9 || cross_out.norm() < 1e-9 {
            continue;
        }
        let phi_hat_in = -(cross_in.normalized());
        let beta_hat_in = phi_hat_in.cross(d_in);
        let phi_hat_out = cross_out.normalized();
        let beta_hat_out = phi_hat_out.cross(d_out);

        let mut chain = PolarizationChain::start(d_in);
        chain.interact(beta_hat_in, phi_hat_in, &dyadic, beta_hat_out, phi_hat_out);
        let gain = chain.finish(d_out);

        // the UTD spreading for spherical incidence is
        // sqrt(s' / (s (s' + s))) / s' = Friis(total) / (lambda/4pi) / sqrt(L0)
        let l0 = s_inc * s_dif / (s_inc + s_dif);
        let points = [tx, q, rx];
        let length = path_length(&points);
        let Ok(spreading) = free_space_gain(length, cfg.center_frequency) else { continue };
        let mut scalar = spreading * Complex64::new(1.0 / l0.sqrt(), 0.0);
        if cfg.enable_vegetation {
            let veg = super::occlusion::vegetation_loss_along(scene, tx, q)
                + super::occlusion::vegetation_loss_along(scene, q, rx);
            if veg > 0.0 {
                scalar *= Complex64::new(10f64.powf(-veg / 20.0), 0.0);
            }
        }
        let gain = gain.scale(scalar);
        if !gain.is_finite() {
            continue;
        }
        let (aod, aoa) = path_angles(&points);
        out.push(PropagationPath {
            interactions: vec![Interaction::Diffraction { wedge: widx as u32, point: q }],
            delay: length / C0,
            length,
            aod_deg: aod,
            aoa_deg: aoa,
            gain,
        });
    }
    out
}
