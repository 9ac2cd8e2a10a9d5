//! Single-bounce directive scattering from surface tiles.
//!
//! Each surface with a nonzero scattering coefficient is subdivided into
//! square tiles of the configured size in its own plane; every tile that
//! sees both link ends contributes one path with the tile centroid as the
//! interaction point. Tile phases come from an RNG seeded by
//! (phase seed, surface id, tile id), so results do not depend on the
//! iteration order or worker count.

use super::occlusion::{segment_visible, vegetation_loss_along};
use super::polarization::{reflection_basis, PolarizationChain};
use super::{path_angles, tile_rng, Interaction, PropagationPath, TraceConfig};
use crate::em::{scatter_gain, Dyadic2x2};
use crate::geom::{clip_polygon_halfspace, polygon_area, polygon_centroid, Vec3};
use crate::scene::{Scene, Surface};
use crate::C0;
use num_complex::Complex64;

/// Tiles of a surface: (tile id, clipped area, centroid).
fn surface_tiles(s: &Surface, tile_size: f64) -> Vec<(u32, f64, Vec3)> {
    let u = (s.vertices[1] - s.vertices[0]).normalized();
    let v = s.normal().cross(u);
    let origin = s.vertices[0];
    let mut umin = f64::INFINITY;
    let mut umax = f64::NEG_INFINITY;
    let mut vmin = f64::INFINITY;
    let mut vmax = f64::NEG_INFINITY;
    for p in &s.vertices {
        let d = *p - origin;
        umin = umin.min(d.dot(u));
        umax = umax.max(d.dot(u));
        vmin = vmin.min(d.dot(v));
        vmax = vmax.max(d.dot(v));
    }
    let cols = ((umax - umin) / tile_size).ceil().max(1.0) as u32;
    let rows = ((vmax - vmin) / tile_size).ceil().max(1.0) as u32;
    let mut tiles = Vec::new();
    for row in 0..rows {
        for col in 0..cols {
            let u0 = umin + col as f64 * tile_size;
            let v0 = vmin + row as f64 * tile_size;
            // clip the polygon to the cell
            let mut poly = s.vertices.clone();
            let base_u = origin.dot(u);
            let base_v = origin.dot(v);
            poly = clip_polygon_halfspace(&poly, u * -1.0, -(base_u + u0));
            if poly.is_empty() {
                continue;
            }
            poly = clip_polygon_halfspace(&poly, u, base_u + u0 + tile_size);
            if poly.is_empty() {
                continue;
            }
            poly = clip_polygon_halfspace(&poly, v * -1.0, -(base_v + v0));
            if poly.is_empty() {
                continue;
            }
            poly = clip_polygon_halfspace(&poly, v, base_v + v0 + tile_size);
            if poly.len() < 3 {
                continue;
            }
            let area = polygon_area(&poly);
            if area < 1e-9 {
                continue;
            }
            tiles.push((row * cols + col, area, polygon_centroid(&poly)));
        }
    }
    tiles
}

pub(super) fn scattering_paths(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
    phase_seed: u64,
) -> Vec<PropagationPath> {
    let k = cfg.wavenumber();
    let mut out = Vec::new();
    for s in &scene.surfaces {
        if s.object_class.is_volume() {
            continue;
        }
        let material = scene.material_of(s);
        if material.scatter_s <= 0.0 {
            continue;
        }
        let n = s.normal();
        for (tile, area, c) in surface_tiles(s, cfg.scatter_tile_size) {
            let d_in_raw = c - tx;
            let d_out_raw = rx - c;
            let r_i = d_in_raw.norm();
            let r_s = d_out_raw.norm();
            if r_i < 1e-9 || r_s < 1e-9 {
                continue;
            }
            let d_in = d_in_raw / r_i;
            let d_out = d_out_raw / r_s;
            let cos_i = -d_in.dot(n);
            let cos_s = d_out.dot(n);
            if cos_i <= 1e-9 || cos_s <= 1e-9 {
                continue; // tile not front-lit from both ends
            }
            let skip = [s.id];
            if !segment_visible(scene, tx, c, &skip) || !segment_visible(scene, c, rx, &skip)
            {
                continue;
            }
            let theta_i = cos_i.clamp(-1.0, 1.0).acos();
            let theta_s = cos_s.clamp(-1.0, 1.0).acos();
            let specular = d_in - n * (2.0 * d_in.dot(n));
            let psi_r = d_out.dot(specular).clamp(-1.0, 1.0).acos();

            let mut rng = tile_rng(phase_seed, s.id, tile);
            let Ok(amplitude) = scatter_gain(
                theta_i,
                theta_s,
                psi_r,
                material.scatter_s,
                material.scatter_alpha,
                area,
                r_i,
                r_s,
                k,
                &mut rng,
            ) else {
                continue;
            };

            // scattering preserves the local (soft, hard) split
            let (e_s, p_in, p_out) = reflection_basis(d_in, n, d_out);
            let mut chain = PolarizationChain::start(d_in);
            chain.interact(e_s, p_in, &Dyadic2x2::identity(), e_s, p_out);
            let mut scalar = amplitude;
            if cfg.enable_vegetation {
                let veg =
                    vegetation_loss_along(scene, tx, c) + vegetation_loss_along(scene, c, rx);
                if veg > 0.0 {
                    scalar *= Complex64::new(10f64.powf(-veg / 20.0), 0.0);
                }
            }
            let gain = chain.finish(d_out).scale(scalar);
            if !gain.is_finite() {
                continue;
            }
            let points = [tx, c, rx];
            let length = r_i + r_s;
            let (aod, aoa) = path_angles(&points);
            let path = PropagationPath {
                interactions: vec![Interaction::Scattering { surface: s.id, tile, point: c }],
                delay: length / C0,
                length,
                aod_deg: aod,
                aoa_deg: aoa,
                gain,
            };
            if path.power_db() >= cfg.min_path_gain_db {
                out.push(path);
            }
        }
    }
    out
}
