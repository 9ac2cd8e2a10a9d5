//! Line of sight and image-method specular reflections.
//!
//! Candidate surface sequences are pruned by half-space tests only: the
//! running image must lie strictly in front of the next surface's plane,
//! and a pair of surfaces is admissible when each has at least one vertex
//! strictly in front of the other's plane. No spatial pruning beyond that,
//! so the enumeration provably matches the exhaustive oracle.

use super::occlusion::{segment_visible, vegetation_loss_along, OCCLUSION_EPS};
use super::polarization::{reflection_basis, PolarizationChain};
use super::{path_angles, path_length, PropagationPath, TraceConfig};
use crate::em::{fresnel, free_space_gain, Dyadic2x2};
use crate::geom::{point_in_convex_polygon, Plane, Vec3};
use crate::scene::{Scene, Surface};
use crate::C0;
use num_complex::Complex64;

/// Margin for specular-point containment; boundary hits count as inside.
const SPECULAR_MARGIN: f64 = 1e-9;

pub(super) fn los_path(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Option<PropagationPath> {
    if !segment_visible(scene, tx, rx, &[]) {
        return None;
    }
    let points = [tx, rx];
    finalize_path(scene, cfg, &points, Vec::new(), Dyadic2x2::identity())
}

/// Assemble the final record: Friis spreading, vegetation loss, angles.
/// `chain_gain` is the accumulated interaction dyadic in (V, H) bases.
fn finalize_path(
    scene: &Scene,
    cfg: &TraceConfig,
    points: &[Vec3],
    interactions: Vec<super::Interaction>,
    chain_gain: Dyadic2x2,
) -> Option<PropagationPath> {
    let length = path_length(points);
    let spreading = free_space_gain(length, cfg.center_frequency).ok()?;
    let mut scalar = spreading;
    if cfg.enable_vegetation {
        let mut veg_db = 0.0;
        for w in points.windows(2) {
            veg_db += vegetation_loss_along(scene, w[0], w[1]);
        }
        if veg_db > 0.0 {
            scalar *= Complex64::new(10f64.powf(-veg_db / 20.0), 0.0);
        }
    }
    let gain = chain_gain.scale(scalar);
    if !gain.is_finite() {
        return None;
    }
    let (aod, aoa) = path_angles(points);
    Some(PropagationPath {
        interactions,
        delay: length / C0,
        length,
        aod_deg: aod,
        aoa_deg: aoa,
        gain,
    })
}

struct ImageSearch<'a> {
    scene: &'a Scene,
    cfg: &'a TraceConfig,
    tx: Vec3,
    rx: Vec3,
    planes: Vec<Plane>,
    /// pair_ok[a][b]: can a reflection off b follow one off a
    pair_ok: Vec<Vec<bool>>,
    out: Vec<PropagationPath>,
}

pub(super) fn reflection_paths(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Vec<PropagationPath> {
    let n = scene.surfaces.len();
    if n == 0 || cfg.max_reflection_order == 0 {
        return Vec::new();
    }
    let planes: Vec<Plane> = scene.surfaces.iter().map(|s| s.plane()).collect();
    let mut pair_ok = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            pair_ok[a][b] = has_vertex_in_front(&scene.surfaces[b], &planes[a])
                && has_vertex_in_front(&scene.surfaces[a], &planes[b]);
        }
    }
    let mut search = ImageSearch { scene, cfg, tx, rx, planes, pair_ok, out: Vec::new() };
    let mut sequence = Vec::with_capacity(cfg.max_reflection_order as usize);
    let mut images = Vec::with_capacity(cfg.max_reflection_order as usize + 1);
    images.push(tx);
    for first in 0..n {
        if scene.surfaces[first].object_class.is_volume() {
            continue;
        }
        search.descend(first, &mut sequence, &mut images);
    }
    search.out
}

fn has_vertex_in_front(surface: &Surface, plane: &Plane) -> bool {
    surface
        .vertices
        .iter()
        .any(|v| plane.signed_distance(*v) > OCCLUSION_EPS)
}

impl<'a> ImageSearch<'a> {
    fn descend(&mut self, surface: usize, sequence: &mut Vec<usize>, images: &mut Vec<Vec3>) {
        let prev_image = *images.last().unwrap();
        // half-space test: the running image must see the mirror plane front-on
        if self.planes[surface].signed_distance(prev_image) <= OCCLUSION_EPS {
            return;
        }
        sequence.push(surface);
        images.push(self.planes[surface].mirror(prev_image));

        self.try_complete(sequence, images);

        if (sequence.len() as u32) < self.cfg.max_reflection_order {
            for next in 0..self.scene.surfaces.len() {
                if next == surface
                    || !self.pair_ok[surface][next]
                    || self.scene.surfaces[next].object_class.is_volume()
                {
                    continue;
                }
                self.descend(next, sequence, images);
            }
        }

        sequence.pop();
        images.pop();
    }

    /// Backward pass: specular points from rx toward tx, then occlusion
    /// checks and the polarization chain.
    fn try_complete(&mut self, sequence: &[usize], images: &[Vec3]) {
        let k = sequence.len();
        // the receiver must be in front of the last mirror plane
        if self.planes[sequence[k - 1]].signed_distance(self.rx) <= OCCLUSION_EPS {
            return;
        }
        let mut points = vec![Vec3::ZERO; k + 2];
        points[0] = self.tx;
        points[k + 1] = self.rx;
        let mut target = self.rx;
        for j in (0..k).rev() {
            let plane = &self.planes[sequence[j]];
            let image = images[j + 1];
            let t = match plane.segment_intersection(image, target) {
                Some(t) if t > 0.0 && t < 1.0 => t,
                _ => return,
            };
            let p = image + (target - image) * t;
            let s = &self.scene.surfaces[sequence[j]];
            if !point_in_convex_polygon(p, &s.vertices, s.normal(), SPECULAR_MARGIN) {
                return;
            }
            points[j + 1] = p;
            target = p;
        }
        // occlusion along every segment, skipping the interaction surfaces
        // adjacent to each endpoint
        for seg in 0..=k {
            let mut skip = Vec::with_capacity(2);
            if seg > 0 {
                skip.push(self.scene.surfaces[sequence[seg - 1]].id);
            }
            if seg < k {
                skip.push(self.scene.surfaces[sequence[seg]].id);
            }
            if !segment_visible(self.scene, points[seg], points[seg + 1], &skip) {
                return;
            }
        }
        // polarization chain with one Fresnel dyadic per bounce
        let mut chain = PolarizationChain::start((points[1] - points[0]).normalized());
        for j in 0..k {
            let s = &self.scene.surfaces[sequence[j]];
            let d_in = (points[j + 1] - points[j]).normalized();
            let d_out = (points[j + 2] - points[j + 1]).normalized();
            let n = s.normal();
            let cos_inc = -d_in.dot(n);
            if cos_inc <= 0.0 {
                return;
            }
            let theta = cos_inc.clamp(-1.0, 1.0).acos();
            let eps = self.scene.material_of(s).permittivity();
            let Ok((g_soft, g_hard)) = fresnel(eps, theta) else { return };
            let (e_s, p_in, p_out) = reflection_basis(d_in, n, d_out);
            chain.interact(e_s, p_in, &Dyadic2x2::diagonal(g_soft, g_hard), e_s, p_out);
        }
        let gain = chain.finish((points[k + 1] - points[k]).normalized());
        let interactions: Vec<super::Interaction> = sequence
            .iter()
            .zip(points[1..=k].iter())
            .map(|(&si, &p)| super::Interaction::Reflection {
                surface: self.scene.surfaces[si].id,
                point: p,
            })
            .collect();
        if let Some(path) = finalize_path(self.scene, self.cfg, &points, interactions, gain) {
            self.out.push(path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::MaterialDb;
    use crate::scene::{ObjectClass, SceneMetadata, Surface};
    use crate::tracer::{trace_all, trace_reflections};

    /// Closed 10 x 6 x 4 box room looking inward.
    pub(crate) fn box_room() -> Scene {
        let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
        let (x0, y0, z0, x1, y1, z1) = (0.0, 0.0, 0.0, 10.0, 6.0, 4.0);
        // inward normals: wind each face clockwise as seen from outside
        let faces = [
            [v(x0, y0, z0), v(x0, y1, z0), v(x0, y1, z1), v(x0, y0, z1)],
            [v(x1, y0, z0), v(x1, y0, z1), v(x1, y1, z1), v(x1, y1, z0)],
            [v(x0, y0, z0), v(x0, y0, z1), v(x1, y0, z1), v(x1, y0, z0)],
            [v(x0, y1, z0), v(x1, y1, z0), v(x1, y1, z1), v(x0, y1, z1)],
            [v(x0, y0, z0), v(x1, y0, z0), v(x1, y1, z0), v(x0, y1, z0)],
            [v(x0, y0, z1), v(x0, y1, z1), v(x1, y1, z1), v(x1, y0, z1)],
        ];
        let surfaces: Vec<Surface> = faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                Surface::new(i as u32, f.to_vec(), 1, ObjectClass::Building, i as u32).unwrap()
            })
            .collect();
        Scene::assemble(MaterialDb::builtin(), surfaces, SceneMetadata::default()).unwrap()
    }

    #[test]
    fn box_room_first_order_count() {
        let scene = box_room();
        let mut cfg = TraceConfig::new(60e9);
        cfg.max_reflection_order = 1;
        cfg.enable_scattering = false;
        cfg.enable_diffraction = false;
        let paths =
            trace_reflections(&scene, Vec3::new(3.0, 2.0, 1.5), Vec3::new(7.0, 4.0, 2.5), &cfg)
                .unwrap();
        assert_eq!(paths.len(), 6);
    }

    #[test]
    fn parallel_plates_unfolding_length() {
        // floor at z=0 (normal up) and ceiling at z=5 (normal down)
        let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
        let floor = Surface::new(
            0,
            vec![v(-10.0, -50.0, 0.0), v(200.0, -50.0, 0.0), v(200.0, 50.0, 0.0), v(-10.0, 50.0, 0.0)],
            1,
            ObjectClass::Ground,
            0,
        )
        .unwrap();
        let ceiling = Surface::new(
            1,
            vec![v(-10.0, -50.0, 5.0), v(-10.0, 50.0, 5.0), v(200.0, 50.0, 5.0), v(200.0, -50.0, 5.0)],
            1,
            ObjectClass::TunnelWall,
            1,
        )
        .unwrap();
        let scene =
            Scene::assemble(MaterialDb::builtin(), vec![floor, ceiling], SceneMetadata::default())
                .unwrap();
        let mut cfg = TraceConfig::new(30e9);
        cfg.max_reflection_order = 1;
        let tx = Vec3::new(0.0, 0.0, 2.5);
        let rx = Vec3::new(100.0, 0.0, 2.5);
        let paths = trace_reflections(&scene, tx, rx, &cfg).unwrap();
        assert_eq!(paths.len(), 2);
        for p in &paths {
            assert!((p.length - 100.125).abs() < 1e-3, "length {}", p.length);
        }
    }

    #[test]
    fn order_k_parallel_plate_paths_number_two() {
        let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
        let floor = Surface::new(
            0,
            vec![v(-500.0, -500.0, 0.0), v(500.0, -500.0, 0.0), v(500.0, 500.0, 0.0), v(-500.0, 500.0, 0.0)],
            1,
            ObjectClass::Ground,
            0,
        )
        .unwrap();
        let ceiling = Surface::new(
            1,
            vec![v(-500.0, -500.0, 5.0), v(-500.0, 500.0, 5.0), v(500.0, 500.0, 5.0), v(500.0, -500.0, 5.0)],
            1,
            ObjectClass::TunnelWall,
            1,
        )
        .unwrap();
        let scene =
            Scene::assemble(MaterialDb::builtin(), vec![floor, ceiling], SceneMetadata::default())
                .unwrap();
        let tx = Vec3::new(0.0, 0.0, 2.0);
        let rx = Vec3::new(60.0, 0.0, 3.0);
        for k in 1..=10u32 {
            let mut cfg = TraceConfig::new(30e9);
            cfg.max_reflection_order = k;
            cfg.min_path_gain_db = -400.0;
            let paths = trace_reflections(&scene, tx, rx, &cfg).unwrap();
            let of_order =
                paths.iter().filter(|p| p.interactions.len() == k as usize).count();
            assert_eq!(of_order, 2, "order {k}");
        }
    }

    #[test]
    fn reciprocity_in_the_box_room() {
        use rand::{Rng, SeedableRng};
        let scene = box_room();
        let mut cfg = TraceConfig::new(60e9);
        cfg.max_reflection_order = 2;
        cfg.enable_scattering = false;
        cfg.min_path_gain_db = -400.0;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let p = Vec3::new(
                rng.gen_range(0.5..9.5),
                rng.gen_range(0.5..5.5),
                rng.gen_range(0.5..3.5),
            );
            let q = Vec3::new(
                rng.gen_range(0.5..9.5),
                rng.gen_range(0.5..5.5),
                rng.gen_range(0.5..3.5),
            );
            if p.dist(q) < 0.5 {
                continue;
            }
            let fwd = trace_all(&scene, p, q, &cfg, 0).unwrap();
            let bwd = trace_all(&scene, q, p, &cfg, 0).unwrap();
            assert_eq!(fwd.len(), bwd.len());
            // delays must agree as multisets
            let mut df: Vec<f64> = fwd.iter().map(|p| p.delay).collect();
            let mut db: Vec<f64> = bwd.iter().map(|p| p.delay).collect();
            df.sort_by(f64::total_cmp);
            db.sort_by(f64::total_cmp);
            for (a, b) in df.iter().zip(&db) {
                assert!((a - b).abs() <= 1e-9 * a.max(*b));
            }
            // match paths by reversed interaction chains and compare dyadics
            for f in &fwd {
                let rev: Vec<_> = f.interactions.iter().rev().cloned().collect();
                let partner = bwd
                    .iter()
                    .find(|b| {
                        b.interactions.len() == rev.len()
                            && b.interactions
                                .iter()
                                .zip(&rev)
                                .all(|(x, y)| x.sort_key() == y.sort_key())
                    })
                    .expect("reverse path present");
                let t = f.gain.transpose();
                let scale = t.frobenius_sq().sqrt().max(1e-30);
                for i in 0..2 {
                    for j in 0..2 {
                        let d = (partner.gain.m[i][j] - t.m[i][j]).norm();
                        assert!(d <= 1e-9 * scale, "entry {i}{j}: {d} (scale {scale})");
                    }
                }
            }
        }
    }
}
