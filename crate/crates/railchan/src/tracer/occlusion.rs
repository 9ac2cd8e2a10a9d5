//! Segment visibility and vegetation chords.
//!
//! Tie-break rules: a segment endpoint on its own interaction surface is
//! not self-occluding (callers pass those surface ids in `skip`); grazing
//! intersections within 1e-6 m of a polygon boundary count as blocked.
//! Vegetation-class surfaces never block; rays crossing a vegetation
//! object's volume pick up attenuation proportional to the chord length.

use crate::geom::{point_in_convex_polygon, Vec3};
use crate::scene::{Scene, Surface};

/// Occlusion epsilon in meters.
pub const OCCLUSION_EPS: f64 = 1e-6;

fn segment_hits_surface(a: Vec3, b: Vec3, s: &Surface) -> bool {
    let plane = s.plane();
    let da = plane.signed_distance(a);
    let db = plane.signed_distance(b);
    // endpoints on the plane (within eps) belong to adjacent-interaction
    // handling; require a genuine crossing of the open segment
    if (da > OCCLUSION_EPS && db > OCCLUSION_EPS) || (da < -OCCLUSION_EPS && db < -OCCLUSION_EPS)
    {
        return false;
    }
    if (da - db).abs() < 1e-300 {
        return false;
    }
    let t = da / (da - db);
    if !(0.0..=1.0).contains(&t) {
        return false;
    }
    // exclude crossings at the very endpoints (within eps along the segment)
    let seg_len = a.dist(b);
    if t * seg_len < OCCLUSION_EPS || (1.0 - t) * seg_len < OCCLUSION_EPS {
        return false;
    }
    let p = a + (b - a) * t;
    point_in_convex_polygon(p, &s.vertices, s.normal(), OCCLUSION_EPS)
}

/// True when the open segment a -> b crosses no opaque surface. Surfaces
/// listed in `skip` (the interaction surfaces adjacent to the endpoints)
/// are exempt, as are vegetation-class surfaces.
pub fn segment_visible(scene: &Scene, a: Vec3, b: Vec3, skip: &[u32]) -> bool {
    for s in &scene.surfaces {
        if s.object_class.is_volume() {
            continue;
        }
        if skip.contains(&s.id) {
            continue;
        }
        if segment_hits_surface(a, b, s) {
            return false;
        }
    }
    true
}

/// Total chord length of the segment through vegetation objects, meters,
/// weighted by each object's specific attenuation to give dB directly.
pub fn vegetation_loss_along(scene: &Scene, a: Vec3, b: Vec3) -> f64 {
    let mut loss_db = 0.0;
    let mut object_ids: Vec<u32> = scene
        .surfaces
        .iter()
        .filter(|s| s.object_class.is_volume())
        .map(|s| s.object_id)
        .collect();
    object_ids.sort_unstable();
    object_ids.dedup();

    for object_id in object_ids {
        let faces: Vec<&Surface> = scene
            .surfaces
            .iter()
            .filter(|s| s.object_id == object_id)
            .collect();
        if faces.is_empty() {
            continue;
        }
        // clip the segment parameter range against the convex volume
        // bounded by the outward face planes
        let mut t0 = 0.0_f64;
        let mut t1 = 1.0_f64;
        let dir = b - a;
        let mut inside_possible = true;
        for f in &faces {
            let plane = f.plane();
            let da = plane.signed_distance(a);
            let denom = plane.normal.dot(dir);
            if denom.abs() < 1e-12 {
                if da > 0.0 {
                    inside_possible = false;
                    break;
                }
                continue;
            }
            let t = -da / denom;
            if denom > 0.0 {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
        }
        if inside_possible && t1 > t0 {
            let chord = (t1 - t0) * dir.norm();
            let veg_atten = scene.material_of(faces[0]).veg_atten;
            loss_db += chord * veg_atten;
        }
    }
    loss_db
}
