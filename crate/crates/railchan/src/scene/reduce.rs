//! Concise-scene reduction.
//!
//! Two rules, applied by scene classification:
//!
//! - outdoor (scene has barriers): when both antennas are lower than the
//!   barriers, traction pylons, tracks and every object strictly outside
//!   the barrier pair are dropped; when either antenna is higher, outside
//!   objects are kept and only the tracks are dropped.
//! - tunnel (tunnel walls, no barriers): the train, ground and tunnel
//!   walls are kept; tracks are dropped, and any other object with a total
//!   area below 7 m² goes with them.

use super::{ObjectClass, Scene, SceneError};
use std::collections::HashMap;

/// Area threshold below which tunnel furniture is dropped, m².
pub const FURNITURE_AREA_THRESHOLD_M2: f64 = 7.0;

/// Surface accounting attached to a reduced scene.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReductionReport {
    pub surfaces_before: usize,
    pub surfaces_after: usize,
}

impl ReductionReport {
    /// Fraction of surfaces removed, in percent.
    pub fn percent_removed(&self) -> f64 {
        if self.surfaces_before == 0 {
            return 0.0;
        }
        100.0 * (self.surfaces_before - self.surfaces_after) as f64
            / self.surfaces_before as f64
    }
}

/// Total polygon area of one object, m².
pub fn object_area(scene: &Scene, object_id: u32) -> Result<f64, SceneError> {
    let surfaces = scene.object_surfaces(object_id);
    if surfaces.is_empty() {
        return Err(SceneError::UnknownObject(object_id));
    }
    Ok(surfaces.iter().map(|s| s.area()).sum())
}

/// Produce the concise version of a scene for the given antenna heights.
pub fn reduce_scene(scene: &Scene, tx_height: f64, rx_height: f64) -> Result<Scene, SceneError> {
    let has_barrier = scene.surfaces.iter().any(|s| s.object_class == ObjectClass::Barrier);
    let has_tunnel = scene.surfaces.iter().any(|s| s.object_class == ObjectClass::TunnelWall);

    let keep: Vec<bool> = if has_barrier {
        reduce_outdoor(scene, tx_height, rx_height)
    } else if has_tunnel {
        reduce_tunnel(scene)?
    } else {
        return Err(SceneError::Unclassified);
    };

    let surfaces: Vec<_> = scene
        .surfaces
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(s, _)| s.clone())
        .collect();

    let mut metadata = scene.metadata.clone();
    metadata.concise = true;
    metadata.reduction = Some(ReductionReport {
        surfaces_before: scene.surfaces.len(),
        surfaces_after: surfaces.len(),
    });
    Scene::assemble(scene.materials.clone(), surfaces, metadata)
}

fn reduce_outdoor(scene: &Scene, tx_height: f64, rx_height: f64) -> Vec<bool> {
    // barrier geometry read off the scene itself
    let mut barrier_top = f64::NEG_INFINITY;
    let mut barrier_offset = f64::INFINITY;
    for s in &scene.surfaces {
        if s.object_class == ObjectClass::Barrier {
            for v in &s.vertices {
                barrier_top = barrier_top.max(v.z);
                barrier_offset = barrier_offset.min(v.y.abs());
            }
        }
    }
    let low_antennas = tx_height.max(rx_height) < barrier_top;

    // an object is strictly outside when every vertex lies beyond the
    // barrier lateral offset on one side
    let mut outside: HashMap<u32, bool> = HashMap::new();
    for s in &scene.surfaces {
        let all_out = s.vertices.iter().all(|v| v.y.abs() > barrier_offset + 1e-9);
        let e = outside.entry(s.object_id).or_insert(true);
        *e &= all_out;
    }

    scene
        .surfaces
        .iter()
        .map(|s| match s.object_class {
            ObjectClass::Track => false,
            ObjectClass::Pylon if low_antennas => false,
            ObjectClass::Barrier => true,
            _ => !(low_antennas && outside[&s.object_id]),
        })
        .collect()
}

fn reduce_tunnel(scene: &Scene) -> Result<Vec<bool>, SceneError> {
    let mut areas: HashMap<u32, f64> = HashMap::new();
    for s in &scene.surfaces {
        *areas.entry(s.object_id).or_default() += s.area();
    }
    Ok(scene
        .surfaces
        .iter()
        .map(|s| match s.object_class {
            ObjectClass::Train | ObjectClass::Ground | ObjectClass::TunnelWall => true,
            ObjectClass::Track => false,
            _ => areas[&s.object_id] >= FURNITURE_AREA_THRESHOLD_M2,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{build_module, ModuleKind, ObjectClass, ScenarioSpec, Surface};
    use crate::em::MaterialDb;
    use crate::geom::Vec3;
    use crate::scene::SceneMetadata;

    #[test]
    fn areas_of_simple_shapes() {
        let db = MaterialDb::builtin();
        let rect = Surface::new(
            0,
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(1.0, 2.0, 0.0),
                Vec3::new(0.0, 2.0, 0.0),
            ],
            0,
            ObjectClass::Furniture,
            0,
        )
        .unwrap();
        let tri = Surface::new(
            1,
            vec![Vec3::new(0.0, 0.0, 1.0), Vec3::new(1.0, 0.0, 1.0), Vec3::new(0.0, 1.0, 1.0)],
            0,
            ObjectClass::Furniture,
            1,
        )
        .unwrap();
        let scene =
            Scene::assemble(db, vec![rect, tri], SceneMetadata::default()).unwrap();
        assert!((object_area(&scene, 0).unwrap() - 2.0).abs() < 1e-12);
        assert!((object_area(&scene, 1).unwrap() - 0.5).abs() < 1e-12);
        assert!(object_area(&scene, 99).is_err());
    }

    #[test]
    fn cuboid_surface_area() {
        let mut spec = ScenarioSpec::new(ModuleKind::M5);
        spec.furniture_count = 1;
        let scene = build_module(&spec).unwrap();
        let furn_id = scene
            .surfaces
            .iter()
            .find(|s| s.object_class == ObjectClass::Furniture)
            .unwrap()
            .object_id;
        // 1.0 x 0.5 x 0.8 box: 2(lw + lh + wh) = 2(0.5 + 0.8 + 0.4) = 3.4
        assert!((object_area(&scene, furn_id).unwrap() - 3.4).abs() < 1e-9);
    }

    fn tunnel_with_furniture_area(target_area: f64) -> Scene {
        let mut spec = ScenarioSpec::new(ModuleKind::M5);
        spec.furniture_count = 0;
        spec.indicator_count = 0;
        let scene = build_module(&spec).unwrap();
        // append one furniture box with the requested total area:
        // cube with side s has area 6 s^2
        let side = (target_area / 6.0).sqrt();
        let mut surfaces = scene.surfaces.clone();
        let base = surfaces.iter().map(|s| s.id).max().unwrap() + 1;
        let obj = surfaces.iter().map(|s| s.object_id).max().unwrap() + 1;
        let min = Vec3::new(10.0, 0.0, 0.0);
        let max = min + Vec3::new(side, side, side);
        let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
        let faces = [
            [v(min.x, min.y, min.z), v(min.x, min.y, max.z), v(min.x, max.y, max.z), v(min.x, max.y, min.z)],
            [v(max.x, min.y, min.z), v(max.x, max.y, min.z), v(max.x, max.y, max.z), v(max.x, min.y, max.z)],
            [v(min.x, min.y, min.z), v(max.x, min.y, min.z), v(max.x, min.y, max.z), v(min.x, min.y, max.z)],
            [v(min.x, max.y, min.z), v(min.x, max.y, max.z), v(max.x, max.y, max.z), v(max.x, max.y, min.z)],
            [v(min.x, min.y, min.z), v(min.x, max.y, min.z), v(max.x, max.y, min.z), v(max.x, min.y, min.z)],
            [v(min.x, min.y, max.z), v(max.x, min.y, max.z), v(max.x, max.y, max.z), v(min.x, max.y, max.z)],
        ];
        for (i, f) in faces.iter().enumerate() {
            surfaces.push(
                Surface::new(base + i as u32, f.to_vec(), 1, ObjectClass::Furniture, obj)
                    .unwrap(),
            );
        }
        Scene::assemble(scene.materials.clone(), surfaces, scene.metadata.clone()).unwrap()
    }

    #[test]
    fn tunnel_furniture_area_rule() {
        let small = tunnel_with_furniture_area(5.0);
        let reduced = reduce_scene(&small, 6.0, 4.5).unwrap();
        assert!(reduced.surfaces.iter().all(|s| s.object_class != ObjectClass::Furniture));
        assert!(reduced.surfaces.iter().any(|s| s.object_class == ObjectClass::TunnelWall));
        assert!(reduced.surfaces.iter().any(|s| s.object_class == ObjectClass::Train));
        assert!(reduced.surfaces.iter().any(|s| s.object_class == ObjectClass::Ground));
        assert!(reduced.surfaces.iter().all(|s| s.object_class != ObjectClass::Track));

        let big = tunnel_with_furniture_area(8.0);
        let reduced = reduce_scene(&big, 6.0, 4.5).unwrap();
        assert!(reduced.surfaces.iter().any(|s| s.object_class == ObjectClass::Furniture));
    }

    #[test]
    fn outdoor_low_vs_high_antennas() {
        let spec = ScenarioSpec::new(ModuleKind::M2); // barriers at 1.5 m
        let scene = build_module(&spec).unwrap();
        let low = reduce_scene(&scene, 1.0, 0.92).unwrap();
        // all objects strictly outside the barriers are gone
        let offset = spec.barrier_offset;
        for s in &low.surfaces {
            if s.object_class == ObjectClass::Barrier {
                continue;
            }
            let all_out = s.vertices.iter().all(|v| v.y.abs() > offset + 1e-9);
            assert!(!all_out, "outside object survived: {:?}", s.object_class);
        }
        assert!(low.surfaces.iter().all(|s| s.object_class != ObjectClass::Pylon));

        let high = reduce_scene(&scene, 6.0, 4.5).unwrap();
        assert!(high.surfaces.iter().any(|s| s.object_class == ObjectClass::Pylon));
        assert!(high.surfaces.iter().any(|s| s.object_class == ObjectClass::Billboard));
    }

    #[test]
    fn reduction_is_subset_and_idempotent() {
        for kind in ModuleKind::ALL {
            let scene = build_module(&ScenarioSpec::new(kind)).unwrap();
            let once = reduce_scene(&scene, 1.0, 0.92).unwrap();
            let ids: std::collections::HashSet<u32> =
                scene.surfaces.iter().map(|s| s.id).collect();
            assert!(once.surfaces.iter().all(|s| ids.contains(&s.id)));
            let twice = reduce_scene(&once, 1.0, 0.92).unwrap();
            assert_eq!(once.surfaces, twice.surfaces, "module {}", kind.as_str());
            let report = once.metadata.reduction.unwrap();
            assert_eq!(report.surfaces_before, scene.surfaces.len());
            assert_eq!(report.surfaces_after, once.surfaces.len());
        }
    }

    #[test]
    fn unclassified_scene_is_rejected() {
        let db = MaterialDb::builtin();
        let plate = Surface::new(
            0,
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
            ],
            0,
            ObjectClass::Ground,
            0,
        )
        .unwrap();
        let scene = Scene::assemble(db, vec![plate], SceneMetadata::default()).unwrap();
        assert!(matches!(reduce_scene(&scene, 1.0, 1.0), Err(SceneError::Unclassified)));
    }
}
