//! Scene geometry model and the parametric railway scenario builders.
//!
//! A scene is a set of convex planar polygons (surfaces) grouped into
//! objects, each tagged with a material from the material table and an
//! object class. Diffracting wedges are derived from the surface set.
//! Scenes are immutable after construction and safe to share read-only
//! across tracer workers.

mod builder;
mod io;
mod reduce;
mod wedges;

pub use builder::{build_module, expected_surface_count, ModuleKind, ScenarioSpec, TunnelShape};
pub use io::{load_mesh_text, load_scene, parse_scene, save_scene, scene_to_string};
pub use reduce::{object_area, reduce_scene, ReductionReport};
pub use wedges::extract_wedges;

use crate::em::{EmError, MaterialDb};
use crate::geom::{
    coplanarity_deviation, is_convex_ccw, polygon_area, polygon_centroid, polygon_normal_raw,
    Aabb, Plane, Vec3, GEOM_EPS,
};
use thiserror::Error;

/// Errors from scene construction, reduction and I/O.
#[derive(Debug, Error)]
pub enum SceneError {
    #[error("surface {id}: {message}")]
    InvalidSurface { id: u32, message: String },
    #[error("invalid scenario spec: {0}")]
    InvalidSpec(String),
    #[error("scene file, line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown object id {0}")]
    UnknownObject(u32),
    #[error("scene has neither barrier nor tunnel classification")]
    Unclassified,
    #[error(transparent)]
    Material(#[from] EmError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Object classes of the railway scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectClass {
    Ground,
    Track,
    Barrier,
    Pylon,
    Billboard,
    TrafficSign,
    CrossingBridge,
    Building,
    TunnelWall,
    Cct,
    CuttingWall,
    SteepWall,
    Train,
    Station,
    Awning,
    Indicator,
    Vegetation,
    Furniture,
}

impl ObjectClass {
    pub const ALL: [ObjectClass; 18] = [
        ObjectClass::Ground,
        ObjectClass::Track,
        ObjectClass::Barrier,
        ObjectClass::Pylon,
        ObjectClass::Billboard,
        ObjectClass::TrafficSign,
        ObjectClass::CrossingBridge,
        ObjectClass::Building,
        ObjectClass::TunnelWall,
        ObjectClass::Cct,
        ObjectClass::CuttingWall,
        ObjectClass::SteepWall,
        ObjectClass::Train,
        ObjectClass::Station,
        ObjectClass::Awning,
        ObjectClass::Indicator,
        ObjectClass::Vegetation,
        ObjectClass::Furniture,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ObjectClass::Ground => "ground",
            ObjectClass::Track => "track",
            ObjectClass::Barrier => "barrier",
            ObjectClass::Pylon => "pylon",
            ObjectClass::Billboard => "billboard",
            ObjectClass::TrafficSign => "traffic_sign",
            ObjectClass::CrossingBridge => "crossing_bridge",
            ObjectClass::Building => "building",
            ObjectClass::TunnelWall => "tunnel_wall",
            ObjectClass::Cct => "cct",
            ObjectClass::CuttingWall => "cutting_wall",
            ObjectClass::SteepWall => "steep_wall",
            ObjectClass::Train => "train",
            ObjectClass::Station => "station",
            ObjectClass::Awning => "awning",
            ObjectClass::Indicator => "indicator",
            ObjectClass::Vegetation => "vegetation",
            ObjectClass::Furniture => "furniture",
        }
    }

    pub fn parse(s: &str) -> Option<ObjectClass> {
        Self::ALL.iter().copied().find(|c| c.as_str() == s)
    }

    /// Classes whose objects attenuate rays crossing their volume instead
    /// of blocking them.
    pub fn is_volume(&self) -> bool {
        matches!(self, ObjectClass::Vegetation)
    }
}

/// One convex planar polygon with material and object tags.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub id: u32,
    pub vertices: Vec<Vec3>,
    /// Index into the scene material table.
    pub material: usize,
    pub object_class: ObjectClass,
    pub object_id: u32,
    normal: Vec3,
}

impl Surface {
    pub fn new(
        id: u32,
        vertices: Vec<Vec3>,
        material: usize,
        object_class: ObjectClass,
        object_id: u32,
    ) -> Result<Surface, SceneError> {
        let invalid = |message: String| SceneError::InvalidSurface { id, message };
        if vertices.len() < 3 {
            return Err(invalid(format!("needs >= 3 vertices, got {}", vertices.len())));
        }
        let dev = coplanarity_deviation(&vertices);
        if dev > GEOM_EPS {
            return Err(invalid(format!("vertices not coplanar (deviation {dev:.2e} m)")));
        }
        if !is_convex_ccw(&vertices) {
            return Err(invalid("polygon not convex with consistent winding".into()));
        }
        let raw = polygon_normal_raw(&vertices);
        if raw.norm() < 1e-12 {
            return Err(invalid("degenerate polygon".into()));
        }
        let normal = raw.normalized();
        Ok(Surface { id, vertices, material, object_class, object_id, normal })
    }

    /// Outward unit normal (counterclockwise winding seen from outside).
    pub fn normal(&self) -> Vec3 {
        self.normal
    }

    pub fn plane(&self) -> Plane {
        Plane::from_point_normal(self.vertices[0], self.normal)
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn centroid(&self) -> Vec3 {
        polygon_centroid(&self.vertices)
    }
}

/// A diffracting edge shared by two faces (or the boundary of an isolated
/// plate treated as a half-plane).
#[derive(Debug, Clone, PartialEq)]
pub struct Wedge {
    /// Edge endpoints.
    pub a: Vec3,
    pub b: Vec3,
    pub face_o: u32,
    pub face_n: u32,
    /// Exterior angle in radians, in (π, 2π].
    pub exterior_angle: f64,
    /// Unit edge direction (b − a normalized).
    pub edge_dir: Vec3,
    /// o-face tangent, perpendicular to the edge, pointing into the face.
    pub t_o: Vec3,
    /// o-face outward normal.
    pub n_o: Vec3,
}

impl Wedge {
    /// Exterior angle divided by π.
    pub fn n(&self) -> f64 {
        self.exterior_angle / std::f64::consts::PI
    }

    /// Angular coordinate of a direction (projected perpendicular to the
    /// edge) measured from the o-face through the exterior region, in
    /// [0, 2π).
    pub fn angle_of(&self, dir: Vec3) -> f64 {
        let perp = dir - self.edge_dir * dir.dot(self.edge_dir);
        let phi = perp.dot(self.n_o).atan2(perp.dot(self.t_o));
        phi.rem_euclid(std::f64::consts::TAU)
    }
}

/// Reduction report and builder provenance carried with a scene.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SceneMetadata {
    pub module: String,
    pub concise: bool,
    /// Builder parameters as sorted key/value pairs.
    pub params: Vec<(String, String)>,
    pub reduction: Option<ReductionReport>,
}

/// Immutable scene: surfaces, derived wedges, material table and metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub materials: MaterialDb,
    pub surfaces: Vec<Surface>,
    pub wedges: Vec<Wedge>,
    pub metadata: SceneMetadata,
    pub bounds: Aabb,
}

impl Scene {
    /// Assemble a scene from surfaces: validates id uniqueness, derives
    /// wedges and the bounding box.
    pub fn assemble(
        materials: MaterialDb,
        surfaces: Vec<Surface>,
        metadata: SceneMetadata,
    ) -> Result<Scene, SceneError> {
        let mut seen = std::collections::HashSet::new();
        for s in &surfaces {
            if !seen.insert(s.id) {
                return Err(SceneError::InvalidSurface {
                    id: s.id,
                    message: "duplicate surface id".into(),
                });
            }
            if s.material >= materials.materials().len() {
                return Err(SceneError::InvalidSurface {
                    id: s.id,
                    message: format!("material index {} out of range", s.material),
                });
            }
        }
        let mut bounds = Aabb::empty();
        for s in &surfaces {
            for v in &s.vertices {
                bounds.include(*v);
            }
        }
        let wedges = extract_wedges(&surfaces);
        Ok(Scene { materials, surfaces, wedges, metadata, bounds })
    }

    pub fn surface(&self, id: u32) -> Option<&Surface> {
        self.surfaces.iter().find(|s| s.id == id)
    }

    pub fn material_of(&self, surface: &Surface) -> &crate::em::Material {
        self.materials.by_index(surface.material)
    }

    /// Object ids present in the scene, ascending and deduplicated.
    pub fn object_ids(&self) -> Vec<u32> {
        let mut ids: Vec<u32> = self.surfaces.iter().map(|s| s.object_id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Surfaces belonging to one object.
    pub fn object_surfaces(&self, object_id: u32) -> Vec<&Surface> {
        self.surfaces.iter().filter(|s| s.object_id == object_id).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surface_rejects_bad_polygons() {
        let two = vec![Vec3::ZERO, Vec3::X];
        assert!(Surface::new(0, two, 0, ObjectClass::Ground, 0).is_err());

        let non_planar = vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(1.0, 1.0, 0.5),
            Vec3::new(0.0, 1.0, 0.0),
        ];
        assert!(Surface::new(1, non_planar, 0, ObjectClass::Ground, 0).is_err());
    }

    #[test]
    fn class_roundtrip() {
        for c in ObjectClass::ALL {
            assert_eq!(ObjectClass::parse(c.as_str()), Some(c));
        }
        assert_eq!(ObjectClass::parse("spaceship"), None);
    }
}
