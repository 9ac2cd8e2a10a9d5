//! Scene file I/O.
//!
//! Line-oriented UTF-8 text, header `RCSCENE 1`:
//!
//! ```text
//! RCSCENE 1
//! meta module m5
//! meta concise 0
//! meta param length 500
//! m Metal 1 10000000 0.4 4 0
//! o 0 ground
//! s 0 Concrete 4 0 -5 0 500 -5 0 500 5 0 0 5 0
//! ```
//!
//! `m` records define the material table (names encode spaces as
//! underscores), `o` opens an object with its class, `s` lists a surface's
//! material and vertices. Coordinates are written with shortest
//! round-trip formatting so save -> load reproduces bit-exact geometry.
//!
//! A small triangle-soup importer ([`load_mesh_text`]) accepts external
//! geometry as `v`/`f` records with `usemat`/`class`/`object` state lines.

use super::{ObjectClass, ReductionReport, Scene, SceneError, SceneMetadata, Surface};
use crate::em::{self, MaterialDb};
use crate::geom::Vec3;
use std::path::Path;

/// Serialize a scene to the RCSCENE text format.
pub fn scene_to_string(scene: &Scene) -> String {
    let mut out = String::from("RCSCENE 1\n");
    out.push_str(&format!("meta module {}\n", scene.metadata.module));
    out.push_str(&format!("meta concise {}\n", scene.metadata.concise as u8));
    for (k, v) in &scene.metadata.params {
        out.push_str(&format!("meta param {k} {v}\n"));
    }
    if let Some(r) = &scene.metadata.reduction {
        out.push_str(&format!(
            "meta reduction {} {}\n",
            r.surfaces_before, r.surfaces_after
        ));
    }
    for m in scene.materials.materials() {
        out.push_str(&em::material::format_material_record(m));
        out.push('\n');
    }
    let mut current_object: Option<u32> = None;
    for s in &scene.surfaces {
        if current_object != Some(s.object_id) {
            out.push_str(&format!("o {} {}\n", s.object_id, s.object_class.as_str()));
            current_object = Some(s.object_id);
        }
        let mat = &scene.materials.by_index(s.material).name;
        out.push_str(&format!(
            "s {} {} {}",
            s.id,
            em::material::encode_name(mat),
            s.vertices.len()
        ));
        for v in &s.vertices {
            out.push_str(&format!(" {} {} {}", v.x, v.y, v.z));
        }
        out.push('\n');
    }
    out
}

/// Parse the RCSCENE text format.
pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let bad = |line: usize, message: String| SceneError::Parse { line, message };
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((i, raw)) => {
                let t = raw.trim();
                if t.is_empty() || t.starts_with('#') {
                    continue;
                }
                break (i + 1, t.to_string());
            }
            None => return Err(bad(0, "empty scene file".into())),
        }
    };
    if header.1 != "RCSCENE 1" {
        return Err(bad(header.0, format!("expected header `RCSCENE 1`, got `{}`", header.1)));
    }

    let mut materials: Vec<em::Material> = Vec::new();
    let mut surfaces: Vec<Surface> = Vec::new();
    let mut metadata = SceneMetadata::default();
    let mut current_object: Option<(u32, ObjectClass)> = None;

    for (i, raw) in lines {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match fields[0] {
            "meta" => {
                if fields.len() < 2 {
                    return Err(bad(line, "meta record needs a key".into()));
                }
                match fields[1] {
                    "module" => metadata.module = fields.get(2).unwrap_or(&"").to_string(),
                    "concise" => metadata.concise = fields.get(2) == Some(&"1"),
                    "param" => {
                        if fields.len() != 4 {
                            return Err(bad(line, "meta param needs key and value".into()));
                        }
                        metadata.params.push((fields[2].to_string(), fields[3].to_string()));
                    }
                    "reduction" => {
                        if fields.len() != 4 {
                            return Err(bad(line, "meta reduction needs two counts".into()));
                        }
                        let parse = |s: &str| {
                            s.parse::<usize>()
                                .map_err(|_| bad(line, format!("bad count `{s}`")))
                        };
                        metadata.reduction = Some(ReductionReport {
                            surfaces_before: parse(fields[2])?,
                            surfaces_after: parse(fields[3])?,
                        });
                    }
                    other => return Err(bad(line, format!("unknown meta key `{other}`"))),
                }
            }
            "m" => {
                let m = em::material::parse_material_record(&fields[1..], line)?;
                materials.push(m);
            }
            "o" => {
                if fields.len() != 3 {
                    return Err(bad(line, "object record: `o <id> <class>`".into()));
                }
                let id = fields[1]
                    .parse::<u32>()
                    .map_err(|_| bad(line, format!("bad object id `{}`", fields[1])))?;
                let class = ObjectClass::parse(fields[2])
                    .ok_or_else(|| bad(line, format!("unknown object class `{}`", fields[2])))?;
                current_object = Some((id, class));
            }
            "s" => {
                let (object_id, class) = current_object
                    .ok_or_else(|| bad(line, "surface record before any object record".into()))?;
                if fields.len() < 4 {
                    return Err(bad(line, "surface record: `s <id> <material> <n> coords...`".into()));
                }
                let id = fields[1]
                    .parse::<u32>()
                    .map_err(|_| bad(line, format!("bad surface id `{}`", fields[1])))?;
                let mat_name = em::material::decode_name(fields[2]);
                let mat_index = materials
                    .iter()
                    .position(|m| m.name == mat_name)
                    .ok_or_else(|| SceneError::Material(em::EmError::UnknownMaterial(mat_name.clone())))?;
                let n: usize = fields[3]
                    .parse()
                    .map_err(|_| bad(line, format!("bad vertex count `{}`", fields[3])))?;
                if fields.len() != 4 + 3 * n {
                    return Err(bad(
                        line,
                        format!("surface {id}: expected {} coordinates, got {}", 3 * n, fields.len() - 4),
                    ));
                }
                let mut vertices = Vec::with_capacity(n);
                for v in 0..n {
                    let coord = |j: usize| -> Result<f64, SceneError> {
                        fields[4 + 3 * v + j]
                            .parse::<f64>()
                            .map_err(|_| bad(line, format!("bad coordinate `{}`", fields[4 + 3 * v + j])))
                    };
                    vertices.push(Vec3::new(coord(0)?, coord(1)?, coord(2)?));
                }
                surfaces.push(
                    Surface::new(id, vertices, mat_index, class, object_id)
                        .map_err(|e| bad(line, e.to_string()))?,
                );
            }
            other => return Err(bad(line, format!("unknown record `{other}`"))),
        }
    }
    Scene::assemble(MaterialDb::from_materials(materials), surfaces, metadata)
}

/// Write a scene to a file.
pub fn save_scene(scene: &Scene, path: &Path) -> Result<(), SceneError> {
    std::fs::write(path, scene_to_string(scene))?;
    Ok(())
}

/// Read a scene from a file.
pub fn load_scene(path: &Path) -> Result<Scene, SceneError> {
    let text = std::fs::read_to_string(path)?;
    parse_scene(&text)
}

/// Import triangle-soup text geometry: `v x y z` vertices, `f i j k ...`
/// faces (1-based indices), with `usemat <name>`, `class <class>` and
/// `object <id>` state records. Faces started without an explicit object
/// each get a fresh object id. Materials resolve against `materials`.
pub fn load_mesh_text(text: &str, materials: &MaterialDb) -> Result<Scene, SceneError> {
    let bad = |line: usize, message: String| SceneError::Parse { line, message };
    let mut vertices: Vec<Vec3> = Vec::new();
    let mut surfaces: Vec<Surface> = Vec::new();
    let mut mat_index = 0usize;
    let mut class = ObjectClass::Ground;
    let mut object: Option<u32> = None;
    let mut next_object = 0u32;
    let mut next_surface = 0u32;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = t.split_whitespace().collect();
        match fields[0] {
            "v" => {
                if fields.len() != 4 {
                    return Err(bad(line, "vertex record: `v x y z`".into()));
                }
                let coord = |j: usize| -> Result<f64, SceneError> {
                    fields[j]
                        .parse::<f64>()
                        .map_err(|_| bad(line, format!("bad coordinate `{}`", fields[j])))
                };
                vertices.push(Vec3::new(coord(1)?, coord(2)?, coord(3)?));
            }
            "usemat" => {
                if fields.len() != 2 {
                    return Err(bad(line, "usemat record: `usemat <name>`".into()));
                }
                mat_index = materials.index_of(&em::material::decode_name(fields[1]))?;
            }
            "class" => {
                if fields.len() != 2 {
                    return Err(bad(line, "class record: `class <class>`".into()));
                }
                class = ObjectClass::parse(fields[1])
                    .ok_or_else(|| bad(line, format!("unknown object class `{}`", fields[1])))?;
            }
            "object" => {
                if fields.len() != 2 {
                    return Err(bad(line, "object record: `object <id>`".into()));
                }
                let id = fields[1]
                    .parse::<u32>()
                    .map_err(|_| bad(line, format!("bad object id `{}`", fields[1])))?;
                object = Some(id);
                next_object = next_object.max(id + 1);
            }
            "f" => {
                if fields.len() < 4 {
                    return Err(bad(line, "face record needs at least 3 indices".into()));
                }
                let mut poly = Vec::with_capacity(fields.len() - 1);
                for s in &fields[1..] {
                    let idx: usize = s
                        .parse()
                        .map_err(|_| bad(line, format!("bad vertex index `{s}`")))?;
                    if idx == 0 || idx > vertices.len() {
                        return Err(bad(line, format!("vertex index {idx} out of range")));
                    }
                    poly.push(vertices[idx - 1]);
                }
                let object_id = object.unwrap_or_else(|| {
                    let id = next_object;
                    next_object += 1;
                    id
                });
                surfaces.push(
                    Surface::new(next_surface, poly, mat_index, class, object_id)
                        .map_err(|e| bad(line, e.to_string()))?,
                );
                next_surface += 1;
            }
            other => return Err(bad(line, format!("unknown record `{other}`"))),
        }
    }
    Scene::assemble(materials.clone(), surfaces, SceneMetadata::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{build_module, ModuleKind, ScenarioSpec, TunnelShape};

    #[test]
    fn roundtrip_is_bit_exact_for_all_modules() {
        for kind in ModuleKind::ALL {
            let mut spec = ScenarioSpec::new(kind);
            if kind == ModuleKind::M5 {
                spec.tunnel_shape = TunnelShape::Arched; // irrational coordinates
            }
            let scene = build_module(&spec).unwrap();
            let text = scene_to_string(&scene);
            let back = parse_scene(&text).unwrap();
            assert_eq!(scene, back, "module {}", kind.as_str());
        }
    }

    #[test]
    fn two_vertex_polygon_is_a_parse_error_naming_the_surface() {
        let text = "RCSCENE 1\nm Concrete 1.06 0.65 0.4 4 0\no 0 ground\ns 7 Concrete 2 0 0 0 1 0 0\n";
        let err = parse_scene(text).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains('7'), "{msg}");
        assert!(msg.contains("line 4"), "{msg}");
    }

    #[test]
    fn unknown_material_is_a_resolution_error() {
        let text = "RCSCENE 1\nm Concrete 1.06 0.65 0.4 4 0\no 0 ground\ns 0 Adamantium 3 0 0 0 1 0 0 0 1 0\n";
        let err = parse_scene(text).unwrap_err();
        assert!(err.to_string().contains("Adamantium"));
    }

    #[test]
    fn bad_header_is_rejected() {
        assert!(parse_scene("RCSCENE 2\n").is_err());
        assert!(parse_scene("").is_err());
    }

    #[test]
    fn mesh_import() {
        let db = MaterialDb::builtin();
        let text = "\
# a single metal triangle and a concrete quad
usemat Metal
class traffic_sign
v 0 0 0
v 1 0 0
v 0 1 0
f 1 2 3
usemat Concrete
class ground
v 0 0 1
v 1 0 1
v 1 1 1
v 0 1 1
f 4 5 6 7
";
        let scene = load_mesh_text(text, &db).unwrap();
        assert_eq!(scene.surfaces.len(), 2);
        assert_eq!(scene.material_of(&scene.surfaces[0]).name, "Metal");
        assert_eq!(scene.surfaces[1].object_class, ObjectClass::Ground);
        assert_ne!(scene.surfaces[0].object_id, scene.surfaces[1].object_id);

        let err = load_mesh_text("f 1 2 3\n", &db).unwrap_err();
        assert!(err.to_string().contains("out of range"));
    }

    #[test]
    fn save_load_file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scene.rcs");
        let scene = build_module(&ScenarioSpec::new(ModuleKind::M1)).unwrap();
        save_scene(&scene, &path).unwrap();
        let back = load_scene(&path).unwrap();
        assert_eq!(scene, back);
    }
}
