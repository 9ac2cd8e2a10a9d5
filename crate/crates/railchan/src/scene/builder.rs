//! Parametric builders for simplified versions of the six railway
//! scenario modules.
//!
//! Coordinates: x runs along the track, y is lateral (track centerline
//! bundle at y = 0), z is up. All builders are deterministic functions of
//! the spec; building the same spec twice yields byte-identical scenes.
//!
//! The geometry is a parametric simplification that preserves object
//! classes, materials and topology (corridor + barriers + pylons +
//! module-specific landmark objects); per-module surface counts follow the
//! documented formulas in [`expected_surface_count`] and are part of the
//! builder contract.

use super::{ObjectClass, Scene, SceneError, SceneMetadata, Surface};
use crate::em::MaterialDb;
use crate::geom::Vec3;

/// The six scenario modules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    /// Tunnel entrance on steep wall connecting cutting with crossing bridges.
    M1,
    /// Viaduct with open train station.
    M2,
    /// Urban with semi-closed train station.
    M3,
    /// Rural with cut and cover tunnel.
    M4,
    /// Rural connecting double-track tunnel.
    M5,
    /// Single-track viaduct.
    M6,
}

impl ModuleKind {
    pub const ALL: [ModuleKind; 6] = [
        ModuleKind::M1,
        ModuleKind::M2,
        ModuleKind::M3,
        ModuleKind::M4,
        ModuleKind::M5,
        ModuleKind::M6,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ModuleKind::M1 => "m1",
            ModuleKind::M2 => "m2",
            ModuleKind::M3 => "m3",
            ModuleKind::M4 => "m4",
            ModuleKind::M5 => "m5",
            ModuleKind::M6 => "m6",
        }
    }

    pub fn parse(s: &str) -> Option<ModuleKind> {
        Self::ALL.iter().copied().find(|m| m.as_str() == s.to_ascii_lowercase())
    }

    pub fn tracks(&self) -> usize {
        match self {
            ModuleKind::M6 => 1,
            _ => 2,
        }
    }
}

/// Tunnel cross-section shape for M5.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TunnelShape {
    Rectangular,
    /// Side walls topped by a circular arch faceted into planar strips.
    Arched,
}

/// Dimensional parameters of a scenario module.
///
/// Defaults are documented assumptions for the simplified geometry, not
/// survey values; every length is in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub module: ModuleKind,
    /// Corridor length along x.
    pub length: f64,
    /// Lateral distance between the two track centerlines.
    pub track_spacing: f64,
    /// Barrier height above the ground (outdoor modules).
    pub barrier_height: f64,
    /// Lateral distance of each barrier from the corridor centerline.
    pub barrier_offset: f64,
    /// Spacing of traction pylons along the corridor.
    pub pylon_spacing: f64,
    pub pylon_height: f64,
    /// Tunnel interior width and height (M1 portal, M4 cover, M5).
    pub tunnel_width: f64,
    pub tunnel_height: f64,
    pub tunnel_shape: TunnelShape,
    /// Number of planar strips an arched ceiling is faceted into.
    pub arch_facets: usize,
    /// Lateral offset of the building rows (M3).
    pub building_offset: f64,
    pub building_height: f64,
    /// Along-track spacing of buildings in a row (M3).
    pub building_spacing: f64,
    /// Station platform length (M2, M3).
    pub station_length: f64,
    /// Include the static train box on the second track.
    pub include_train: bool,
    pub train_length: f64,
    /// Number of small furniture boxes inside tunnels (M5).
    pub furniture_count: usize,
    /// Number of LED indicator plates (M5 tunnel, stations).
    pub indicator_count: usize,
    /// Material table the scene references.
    pub materials: MaterialDb,
}

impl ScenarioSpec {
    pub fn new(module: ModuleKind) -> ScenarioSpec {
        ScenarioSpec {
            module,
            length: 500.0,
            track_spacing: 5.0,
            barrier_height: 1.5,
            barrier_offset: 6.0,
            pylon_spacing: 50.0,
            pylon_height: 8.0,
            tunnel_width: 10.0,
            tunnel_height: 7.0,
            tunnel_shape: TunnelShape::Rectangular,
            arch_facets: 12,
            building_offset: 15.0,
            building_height: 12.0,
            building_spacing: 60.0,
            station_length: 100.0,
            include_train: true,
            train_length: 60.0,
            furniture_count: 2,
            indicator_count: 2,
            materials: MaterialDb::builtin(),
        }
    }

    pub fn validate(&self) -> Result<(), SceneError> {
        let mut bad = Vec::new();
        let positive = [
            ("length", self.length),
            ("track_spacing", self.track_spacing),
            ("barrier_offset", self.barrier_offset),
            ("pylon_spacing", self.pylon_spacing),
            ("pylon_height", self.pylon_height),
            ("tunnel_width", self.tunnel_width),
            ("tunnel_height", self.tunnel_height),
            ("building_offset", self.building_offset),
            ("building_height", self.building_height),
            ("building_spacing", self.building_spacing),
            ("station_length", self.station_length),
            ("train_length", self.train_length),
        ];
        for (name, v) in positive {
            if !(v > 0.0) {
                bad.push(format!("{name} must be > 0 (got {v})"));
            }
        }
        if !(self.barrier_height >= 0.0) {
            bad.push(format!("barrier_height must be >= 0 (got {})", self.barrier_height));
        }
        if self.arch_facets < 2 {
            bad.push(format!("arch_facets must be >= 2 (got {})", self.arch_facets));
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(SceneError::InvalidSpec(bad.join("; ")))
        }
    }

    fn params(&self) -> Vec<(String, String)> {
        let mut p = vec![
            ("length".to_string(), fmt_f(self.length)),
            ("track_spacing".to_string(), fmt_f(self.track_spacing)),
            ("barrier_height".to_string(), fmt_f(self.barrier_height)),
            ("barrier_offset".to_string(), fmt_f(self.barrier_offset)),
            ("pylon_spacing".to_string(), fmt_f(self.pylon_spacing)),
            ("pylon_height".to_string(), fmt_f(self.pylon_height)),
            ("tunnel_width".to_string(), fmt_f(self.tunnel_width)),
            ("tunnel_height".to_string(), fmt_f(self.tunnel_height)),
            (
                "tunnel_shape".to_string(),
                match self.tunnel_shape {
                    TunnelShape::Rectangular => "rect".into(),
                    TunnelShape::Arched => "arched".into(),
                },
            ),
            ("arch_facets".to_string(), self.arch_facets.to_string()),
            ("building_offset".to_string(), fmt_f(self.building_offset)),
            ("building_height".to_string(), fmt_f(self.building_height)),
            ("building_spacing".to_string(), fmt_f(self.building_spacing)),
            ("station_length".to_string(), fmt_f(self.station_length)),
            ("include_train".to_string(), (self.include_train as u8).to_string()),
            ("train_length".to_string(), fmt_f(self.train_length)),
            ("furniture_count".to_string(), self.furniture_count.to_string()),
            ("indicator_count".to_string(), self.indicator_count.to_string()),
        ];
        p.sort();
        p
    }

    /// Pylon count along the corridor.
    pub fn pylon_count(&self) -> usize {
        (self.length / self.pylon_spacing).floor() as usize
    }

    /// Billboard count (one plate on a support box, every 200 m).
    pub fn billboard_count(&self) -> usize {
        (self.length / 200.0).floor() as usize
    }

    /// Traffic sign count (every 100 m).
    pub fn sign_count(&self) -> usize {
        (self.length / 100.0).floor() as usize
    }

    /// Vegetation box count for rural modules (every 100 m).
    pub fn vegetation_count(&self) -> usize {
        (self.length / 100.0).floor() as usize
    }

    /// Buildings per row for M3.
    pub fn buildings_per_row(&self) -> usize {
        (self.length / self.building_spacing).floor() as usize
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v}")
}

/// Default material assignment per object class, following the material
/// table's object column.
pub(crate) fn default_material_for(class: ObjectClass) -> &'static str {
    match class {
        ObjectClass::Ground => "Concrete",
        ObjectClass::Track => "Concrete",
        ObjectClass::Barrier => "Metal",
        ObjectClass::Pylon => "Metal",
        ObjectClass::Billboard => "Metal",
        ObjectClass::TrafficSign => "Metal",
        ObjectClass::CrossingBridge => "Metal",
        ObjectClass::Building => "Tempered glass",
        ObjectClass::TunnelWall => "Concrete",
        ObjectClass::Cct => "Concrete",
        ObjectClass::CuttingWall => "Concrete",
        ObjectClass::SteepWall => "Concrete",
        ObjectClass::Train => "Aluminium alloy",
        ObjectClass::Station => "Ceramic tile",
        ObjectClass::Awning => "Metal",
        ObjectClass::Indicator => "LED",
        ObjectClass::Vegetation => "Vegetation",
        ObjectClass::Furniture => "Concrete",
    }
}

struct Assembler {
    materials: MaterialDb,
    surfaces: Vec<Surface>,
    next_surface: u32,
    next_object: u32,
}

impl Assembler {
    fn new(materials: MaterialDb) -> Assembler {
        Assembler { materials, surfaces: Vec::new(), next_surface: 0, next_object: 0 }
    }

    fn material_index(&self, class: ObjectClass, name: Option<&str>) -> Result<usize, SceneError> {
        let name = name.unwrap_or_else(|| default_material_for(class));
        Ok(self.materials.index_of(name)?)
    }

    fn begin_object(&mut self) -> u32 {
        let id = self.next_object;
        self.next_object += 1;
        id
    }

    fn push(
        &mut self,
        vertices: Vec<Vec3>,
        class: ObjectClass,
        object_id: u32,
        material: Option<&str>,
    ) -> Result<(), SceneError> {
        let mat = self.material_index(class, material)?;
        let id = self.next_surface;
        self.next_surface += 1;
        self.surfaces.push(Surface::new(id, vertices, mat, class, object_id)?);
        Ok(())
    }

    /// Single rectangular plate; `quad` lists vertices counterclockwise
    /// seen from the side the normal should face.
    fn plate(
        &mut self,
        quad: [Vec3; 4],
        class: ObjectClass,
        material: Option<&str>,
    ) -> Result<u32, SceneError> {
        let object = self.begin_object();
        self.push(quad.to_vec(), class, object, material)?;
        Ok(object)
    }

    /// Closed axis-aligned box with outward normals, 6 faces.
    fn bbox(
        &mut self,
        min: Vec3,
        max: Vec3,
        class: ObjectClass,
        material: Option<&str>,
    ) -> Result<u32, SceneError> {
        let object = self.begin_object();
        self.bbox_into(object, min, max, class, material)?;
        Ok(object)
    }

    fn bbox_into(
        &mut self,
        object: u32,
        min: Vec3,
        max: Vec3,
        class: ObjectClass,
        material: Option<&str>,
    ) -> Result<(), SceneError> {
        let (x0, y0, z0) = (min.x, min.y, min.z);
        let (x1, y1, z1) = (max.x, max.y, max.z);
        let v = |x, y, z| Vec3::new(x, y, z);
        // -x, +x, -y, +y, -z, +z faces, CCW seen from outside
        let faces = [
            [v(x0, y0, z0), v(x0, y0, z1), v(x0, y1, z1), v(x0, y1, z0)],
            [v(x1, y0, z0), v(x1, y1, z0), v(x1, y1, z1), v(x1, y0, z1)],
            [v(x0, y0, z0), v(x1, y0, z0), v(x1, y0, z1), v(x0, y0, z1)],
            [v(x0, y1, z0), v(x0, y1, z1), v(x1, y1, z1), v(x1, y1, z0)],
            [v(x0, y0, z0), v(x0, y1, z0), v(x1, y1, z0), v(x1, y0, z0)],
            [v(x0, y0, z1), v(x1, y0, z1), v(x1, y1, z1), v(x0, y1, z1)],
        ];
        for f in faces {
            self.push(f.to_vec(), class, object, material)?;
        }
        Ok(())
    }

    fn finish(self, module: &str, params: Vec<(String, String)>) -> Result<Scene, SceneError> {
        Scene::assemble(
            self.materials,
            self.surfaces,
            SceneMetadata {
                module: module.to_string(),
                concise: false,
                params,
                reduction: None,
            },
        )
    }
}

/// Build the complete version of a scenario module.
pub fn build_module(spec: &ScenarioSpec) -> Result<Scene, SceneError> {
    spec.validate()?;
    let mut a = Assembler::new(spec.materials.clone());
    match spec.module {
        ModuleKind::M1 => build_m1(&mut a, spec)?,
        ModuleKind::M2 => build_m2(&mut a, spec)?,
        ModuleKind::M3 => build_m3(&mut a, spec)?,
        ModuleKind::M4 => build_m4(&mut a, spec)?,
        ModuleKind::M5 => build_m5(&mut a, spec)?,
        ModuleKind::M6 => build_m6(&mut a, spec)?,
    }
    a.finish(spec.module.as_str(), spec.params())
}

/// Documented surface-count formula per module; part of each builder's
/// contract and asserted in tests.
pub fn expected_surface_count(spec: &ScenarioSpec) -> usize {
    let train = if spec.include_train { 6 } else { 0 };
    let tracks = spec.module.tracks() * 6;
    let ceiling = match spec.tunnel_shape {
        TunnelShape::Rectangular => 1,
        TunnelShape::Arched => spec.arch_facets,
    };
    match spec.module {
        // ground + tracks + 2 barriers + pylons + train + signs
        // + 2 cutting walls + steep wall + bridge box + portal (2 walls + ceiling)
        ModuleKind::M1 => {
            1 + tracks + 2 + spec.pylon_count() * 6 + train + spec.sign_count()
                + 2 + 1 + 6 + 3
        }
        // deck (ground) + tracks + 2 barriers + pylons + train + billboards
        // + 2 platforms + 4 station pylons + indicators
        ModuleKind::M2 => {
            1 + tracks + 2 + spec.pylon_count() * 6 + train + spec.billboard_count() * 7
                + 2 * 6 + 4 * 6 + spec.indicator_count
        }
        // ground + tracks + 2 barriers + pylons + train + buildings (two rows)
        // + 2 platforms + awning + station base + indicators
        ModuleKind::M3 => {
            1 + tracks + 2 + spec.pylon_count() * 6 + train
                + 2 * spec.buildings_per_row() * 6 + 2 * 6 + 1 + 6 + spec.indicator_count
        }
        // ground + tracks + 2 barriers + pylons + train + vegetation
        // + signs + cover segment (2 walls + ceiling)
        ModuleKind::M4 => {
            1 + tracks + 2 + spec.pylon_count() * 6 + train + spec.vegetation_count() * 6
                + spec.sign_count() + 3
        }
        // ground + 2 walls + ceiling + tracks + train + furniture + indicators
        ModuleKind::M5 => {
            1 + 2 + ceiling + tracks + train + spec.furniture_count * 6 + spec.indicator_count
        }
        // deck (ground) + track + 2 barriers + pylons + train + signs
        ModuleKind::M6 => 1 + tracks + 2 + spec.pylon_count() * 6 + train + spec.sign_count(),
    }
}

fn track_centers(spec: &ScenarioSpec) -> Vec<f64> {
    match spec.module.tracks() {
        1 => vec![0.0],
        _ => vec![spec.track_spacing / 2.0, -spec.track_spacing / 2.0],
    }
}

/// Ground plane spanning the corridor, normal up.
fn add_ground(a: &mut Assembler, spec: &ScenarioSpec, half_width: f64) -> Result<(), SceneError> {
    let l = spec.length;
    a.plate(
        [
            Vec3::new(0.0, -half_width, 0.0),
            Vec3::new(l, -half_width, 0.0),
            Vec3::new(l, half_width, 0.0),
            Vec3::new(0.0, half_width, 0.0),
        ],
        ObjectClass::Ground,
        None,
    )?;
    Ok(())
}

/// One thin box per track standing in for the rail pair.
fn add_tracks(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    for y in track_centers(spec) {
        a.bbox(
            Vec3::new(0.0, y - 0.75, 0.0),
            Vec3::new(spec.length, y + 0.75, 0.2),
            ObjectClass::Track,
            None,
        )?;
    }
    Ok(())
}

fn add_barriers(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    let h = spec.barrier_height;
    let w = spec.barrier_offset;
    // plates with normals facing the corridor
    a.plate(
        [
            Vec3::new(0.0, w, 0.0),
            Vec3::new(l, w, 0.0),
            Vec3::new(l, w, h),
            Vec3::new(0.0, w, h),
        ],
        ObjectClass::Barrier,
        None,
    )?;
    a.plate(
        [
            Vec3::new(0.0, -w, 0.0),
            Vec3::new(0.0, -w, h),
            Vec3::new(l, -w, h),
            Vec3::new(l, -w, 0.0),
        ],
        ObjectClass::Barrier,
        None,
    )?;
    Ok(())
}

fn add_pylons(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let y = spec.barrier_offset + 1.0;
    for i in 0..spec.pylon_count() {
        let x = spec.pylon_spacing * (i as f64 + 0.5);
        a.bbox(
            Vec3::new(x - 0.2, y - 0.2, 0.0),
            Vec3::new(x + 0.2, y + 0.2, spec.pylon_height),
            ObjectClass::Pylon,
            None,
        )?;
    }
    Ok(())
}

fn add_train(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    if !spec.include_train {
        return Ok(());
    }
    // static train on the second (or only) track, mid-corridor
    let y = *track_centers(spec).last().unwrap();
    let x0 = (spec.length - spec.train_length) / 2.0;
    a.bbox(
        Vec3::new(x0, y - 1.5, 0.2),
        Vec3::new(x0 + spec.train_length, y + 1.5, 4.0),
        ObjectClass::Train,
        None,
    )?;
    Ok(())
}

fn add_signs(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let y = spec.barrier_offset + 0.5;
    for i in 0..spec.sign_count() {
        let x = 100.0 * (i as f64 + 0.5);
        a.plate(
            [
                Vec3::new(x - 0.5, y, 1.0),
                Vec3::new(x + 0.5, y, 1.0),
                Vec3::new(x + 0.5, y, 2.0),
                Vec3::new(x - 0.5, y, 2.0),
            ],
            ObjectClass::TrafficSign,
            None,
        )?;
    }
    Ok(())
}

fn add_billboards(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let y = spec.barrier_offset + 3.0;
    for i in 0..spec.billboard_count() {
        let x = 200.0 * (i as f64 + 0.5);
        // support box (concrete) and the board plate share one object
        let object = a.begin_object();
        a.bbox_into(
            object,
            Vec3::new(x - 0.3, y - 0.3, 0.0),
            Vec3::new(x + 0.3, y + 0.3, 4.0),
            ObjectClass::Billboard,
            Some("Concrete"),
        )?;
        a.push(
            vec![
                Vec3::new(x - 3.0, y, 4.0),
                Vec3::new(x + 3.0, y, 4.0),
                Vec3::new(x + 3.0, y, 7.0),
                Vec3::new(x - 3.0, y, 7.0),
            ],
            ObjectClass::Billboard,
            object,
            Some("Metal"),
        )?;
    }
    Ok(())
}

fn add_vegetation(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    for i in 0..spec.vegetation_count() {
        let x = 100.0 * (i as f64 + 0.25);
        let side = if i % 2 == 0 { 1.0 } else { -1.0 };
        let y = side * (spec.barrier_offset + 4.0);
        a.bbox(
            Vec3::new(x - 2.0, y - 2.0, 0.0),
            Vec3::new(x + 2.0, y + 2.0, 5.0),
            ObjectClass::Vegetation,
            None,
        )?;
    }
    Ok(())
}

fn add_indicators(a: &mut Assembler, spec: &ScenarioSpec, y: f64) -> Result<(), SceneError> {
    for i in 0..spec.indicator_count {
        let x = spec.length * (i as f64 + 1.0) / (spec.indicator_count as f64 + 1.0);
        let inward = if y > 0.0 { -1.0 } else { 1.0 };
        let _ = inward;
        a.plate(
            [
                Vec3::new(x - 0.6, y, 2.0),
                Vec3::new(x + 0.6, y, 2.0),
                Vec3::new(x + 0.6, y, 2.8),
                Vec3::new(x - 0.6, y, 2.8),
            ],
            ObjectClass::Indicator,
            None,
        )?;
    }
    Ok(())
}

/// Tunnel shell as one object: two side walls plus a flat ceiling or a
/// faceted arch, normals facing the interior.
fn add_tunnel_shell(
    a: &mut Assembler,
    x0: f64,
    x1: f64,
    width: f64,
    height: f64,
    shape: TunnelShape,
    facets: usize,
    class: ObjectClass,
) -> Result<(), SceneError> {
    let hw = width / 2.0;
    let object = a.begin_object();
    let wall_top = match shape {
        TunnelShape::Rectangular => height,
        TunnelShape::Arched => height - width / 4.0,
    };
    // left wall at y = -hw, normal +y (into the tunnel)
    a.push(
        vec![
            Vec3::new(x0, -hw, 0.0),
            Vec3::new(x1, -hw, 0.0),
            Vec3::new(x1, -hw, wall_top),
            Vec3::new(x0, -hw, wall_top),
        ],
        class,
        object,
        None,
    )?;
    // right wall at y = +hw, normal -y
    a.push(
        vec![
            Vec3::new(x0, hw, 0.0),
            Vec3::new(x0, hw, wall_top),
            Vec3::new(x1, hw, wall_top),
            Vec3::new(x1, hw, 0.0),
        ],
        class,
        object,
        None,
    )?;
    match shape {
        TunnelShape::Rectangular => {
            // flat ceiling, normal -z
            a.push(
                vec![
                    Vec3::new(x0, -hw, height),
                    Vec3::new(x0, hw, height),
                    Vec3::new(x1, hw, height),
                    Vec3::new(x1, -hw, height),
                ],
                class,
                object,
                None,
            )?;
        }
        TunnelShape::Arched => {
            // circular arc from wall top to wall top, sagitta width/4,
            // faceted into planar strips
            let rise = height - wall_top;
            let half = hw;
            // circle through (-hw, wall_top), (hw, wall_top), (0, height)
            let r = (half * half + rise * rise) / (2.0 * rise);
            let yc = 0.0;
            let zc = height - r;
            let theta0 = (-(half) - yc).atan2(wall_top - zc);
            let theta1 = (half - yc).atan2(wall_top - zc);
            for i in 0..facets {
                let ta = theta0 + (theta1 - theta0) * i as f64 / facets as f64;
                let tb = theta0 + (theta1 - theta0) * (i + 1) as f64 / facets as f64;
                let pa = (yc + r * ta.sin(), zc + r * ta.cos());
                let pb = (yc + r * tb.sin(), zc + r * tb.cos());
                a.push(
                    vec![
                        Vec3::new(x0, pa.0, pa.1),
                        Vec3::new(x0, pb.0, pb.1),
                        Vec3::new(x1, pb.0, pb.1),
                        Vec3::new(x1, pa.0, pa.1),
                    ],
                    class,
                    object,
                    None,
                )?;
            }
        }
    }
    Ok(())
}

fn build_m1(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    add_ground(a, spec, spec.barrier_offset + 12.0)?;
    add_tracks(a, spec)?;
    add_barriers(a, spec)?;
    add_pylons(a, spec)?;
    add_train(a, spec)?;
    add_signs(a, spec)?;
    // cutting walls flanking the first 60% of the corridor
    let cw = spec.barrier_offset + 2.0;
    for (y, flip) in [(cw, true), (-cw, false)] {
        let quad = if flip {
            [
                Vec3::new(0.0, y, 0.0),
                Vec3::new(0.6 * l, y, 0.0),
                Vec3::new(0.6 * l, y, 6.0),
                Vec3::new(0.0, y, 6.0),
            ]
        } else {
            [
                Vec3::new(0.0, y, 0.0),
                Vec3::new(0.0, y, 6.0),
                Vec3::new(0.6 * l, y, 6.0),
                Vec3::new(0.6 * l, y, 0.0),
            ]
        };
        a.plate(quad, ObjectClass::CuttingWall, None)?;
    }
    // steep wall above the portal mouth, facing back down the corridor
    let hw = spec.tunnel_width / 2.0;
    let _ = hw;
    a.plate(
        [
            Vec3::new(0.7 * l, -12.0, spec.tunnel_height),
            Vec3::new(0.7 * l, 12.0, spec.tunnel_height),
            Vec3::new(0.7 * l, 12.0, spec.tunnel_height + 15.0),
            Vec3::new(0.7 * l, -12.0, spec.tunnel_height + 15.0),
        ],
        ObjectClass::SteepWall,
        None,
    )?;
    // crossing bridge over the tracks at 30% of the corridor
    a.bbox(
        Vec3::new(0.3 * l - 2.0, -(spec.barrier_offset + 6.0), 6.0),
        Vec3::new(0.3 * l + 2.0, spec.barrier_offset + 6.0, 7.5),
        ObjectClass::CrossingBridge,
        None,
    )?;
    // tunnel portal segment over the last 30%
    add_tunnel_shell(
        a,
        0.7 * l,
        l,
        spec.tunnel_width,
        spec.tunnel_height,
        TunnelShape::Rectangular,
        spec.arch_facets,
        ObjectClass::TunnelWall,
    )?;
    Ok(())
}

fn build_m2(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    add_ground(a, spec, spec.barrier_offset + 8.0)?;
    add_tracks(a, spec)?;
    add_barriers(a, spec)?;
    add_pylons(a, spec)?;
    add_train(a, spec)?;
    add_billboards(a, spec)?;
    // open station: two platforms flanking the tracks mid-corridor
    let x0 = (l - spec.station_length) / 2.0;
    let x1 = x0 + spec.station_length;
    let py = spec.track_spacing / 2.0 + 2.5;
    for side in [1.0, -1.0] {
        a.bbox(
            Vec3::new(x0, side * py - 1.5, 0.0),
            Vec3::new(x1, side * py + 1.5, 0.55),
            ObjectClass::Station,
            None,
        )?;
    }
    // four station pylons on the platforms
    for i in 0..4 {
        let x = x0 + spec.station_length * (i as f64 + 0.5) / 4.0;
        let side = if i % 2 == 0 { 1.0 } else { -1.0 };
        a.bbox(
            Vec3::new(x - 0.25, side * py - 0.25, 0.55),
            Vec3::new(x + 0.25, side * py + 0.25, 5.0),
            ObjectClass::Station,
            None,
        )?;
    }
    add_indicators(a, spec, py + 1.0)?;
    Ok(())
}

fn build_m3(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    add_ground(a, spec, spec.building_offset + 10.0)?;
    add_tracks(a, spec)?;
    add_barriers(a, spec)?;
    add_pylons(a, spec)?;
    add_train(a, spec)?;
    // two rows of urban buildings, alternating facade materials
    for side in [1.0, -1.0] {
        for i in 0..spec.buildings_per_row() {
            let x = spec.building_spacing * (i as f64 + 0.1);
            let mat = if i % 2 == 0 { "Tempered glass" } else { "Smooth marble" };
            a.bbox(
                Vec3::new(x, side * spec.building_offset, 0.0),
                Vec3::new(
                    x + spec.building_spacing * 0.6,
                    side * (spec.building_offset + 12.0),
                    spec.building_height,
                ),
                ObjectClass::Building,
                Some(mat),
            )?;
        }
    }
    // semi-closed station: two platforms, a station base, a metal awning
    let x0 = (l - spec.station_length) / 2.0;
    let x1 = x0 + spec.station_length;
    let py = spec.track_spacing / 2.0 + 2.5;
    for side in [1.0, -1.0] {
        a.bbox(
            Vec3::new(x0, side * py - 1.5, 0.0),
            Vec3::new(x1, side * py + 1.5, 0.55),
            ObjectClass::Station,
            None,
        )?;
    }
    a.bbox(
        Vec3::new(x0, py + 2.0, 0.0),
        Vec3::new(x1, py + 6.0, 4.0),
        ObjectClass::Station,
        Some("Concrete"),
    )?;
    // awning roof over the near platform, normal down toward the channel
    a.plate(
        [
            Vec3::new(x0, py - 1.5, 4.5),
            Vec3::new(x0, py + 2.0, 4.5),
            Vec3::new(x1, py + 2.0, 4.5),
            Vec3::new(x1, py - 1.5, 4.5),
        ],
        ObjectClass::Awning,
        None,
    )?;
    add_indicators(a, spec, py + 1.0)?;
    Ok(())
}

fn build_m4(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    add_ground(a, spec, spec.barrier_offset + 12.0)?;
    add_tracks(a, spec)?;
    add_barriers(a, spec)?;
    add_pylons(a, spec)?;
    add_train(a, spec)?;
    add_vegetation(a, spec)?;
    add_signs(a, spec)?;
    // cut-and-cover segment over 40%..70% of the corridor
    add_tunnel_shell(
        a,
        0.4 * l,
        0.7 * l,
        spec.tunnel_width,
        spec.tunnel_height,
        TunnelShape::Rectangular,
        spec.arch_facets,
        ObjectClass::Cct,
    )?;
    Ok(())
}

fn build_m5(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    let l = spec.length;
    let hw = spec.tunnel_width / 2.0;
    add_ground(a, spec, hw)?;
    add_tunnel_shell(
        a,
        0.0,
        l,
        spec.tunnel_width,
        spec.tunnel_height,
        spec.tunnel_shape,
        spec.arch_facets,
        ObjectClass::TunnelWall,
    )?;
    add_tracks(a, spec)?;
    add_train(a, spec)?;
    // small furniture boxes along the right wall (each well under 7 m^2)
    for i in 0..spec.furniture_count {
        let x = l * (i as f64 + 1.0) / (spec.furniture_count as f64 + 1.0);
        a.bbox(
            Vec3::new(x - 0.5, hw - 0.8, 0.0),
            Vec3::new(x + 0.5, hw - 0.3, 0.8),
            ObjectClass::Furniture,
            None,
        )?;
    }
    add_indicators(a, spec, hw - 0.1)?;
    Ok(())
}

fn build_m6(a: &mut Assembler, spec: &ScenarioSpec) -> Result<(), SceneError> {
    add_ground(a, spec, spec.barrier_offset + 2.0)?;
    add_tracks(a, spec)?;
    add_barriers(a, spec)?;
    add_pylons(a, spec)?;
    add_train(a, spec)?;
    add_signs(a, spec)?;
    Ok(())
}
