//! Deterministic multipath search.
//!
//! Four mechanisms, each producing polarimetric path records:
//!
//! - line of sight with an occlusion test,
//! - specular reflections up to a configurable order via the image method,
//! - single wedge diffraction at the Fermat point of each diffracting edge,
//! - single-bounce directive scattering from surface tiles.
//!
//! Mechanism chains are pure: no mixed reflection-diffraction paths.
//! Everything is a deterministic function of (scene, tx, rx, config, seed);
//! the final path list is sorted by a canonical key so concurrent
//! evaluation cannot change the output.

mod diffract;
mod occlusion;
mod polarization;
mod reflect;
mod scatter;

pub use occlusion::segment_visible;
pub use polarization::vh_basis;

use crate::em::Dyadic2x2;
use crate::geom::Vec3;
use crate::scene::Scene;
use crate::C0;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("tx and rx coincide")]
    CoincidentEndpoints,
    #[error("invalid trace config: {0}")]
    InvalidConfig(String),
}

/// One interaction along a path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interaction {
    /// Specular reflection at a surface.
    Reflection { surface: u32, point: Vec3 },
    /// Edge diffraction at a wedge (index into the scene wedge list).
    Diffraction { wedge: u32, point: Vec3 },
    /// Diffuse single bounce from a surface tile.
    Scattering { surface: u32, tile: u32, point: Vec3 },
}

impl Interaction {
    pub fn point(&self) -> Vec3 {
        match self {
            Interaction::Reflection { point, .. }
            | Interaction::Diffraction { point, .. }
            | Interaction::Scattering { point, .. } => *point,
        }
    }

    /// Stable ordering key: (kind, primary id, secondary id).
    fn sort_key(&self) -> (u8, u32, u32) {
        match self {
            Interaction::Reflection { surface, .. } => (0, *surface, 0),
            Interaction::Diffraction { wedge, .. } => (1, *wedge, 0),
            Interaction::Scattering { surface, tile, .. } => (2, *surface, *tile),
        }
    }

    /// Compact text form used in the path CSV dump, e.g. `R12`, `D5`, `S3.17`.
    pub fn label(&self) -> String {
        match self {
            Interaction::Reflection { surface, .. } => format!("R{surface}"),
            Interaction::Diffraction { wedge, .. } => format!("D{wedge}"),
            Interaction::Scattering { surface, tile, .. } => format!("S{surface}.{tile}"),
        }
    }
}

/// One multipath component.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationPath {
    /// Interaction chain; empty for line of sight.
    pub interactions: Vec<Interaction>,
    /// Propagation delay, s (geometric length / c).
    pub delay: f64,
    /// Total geometric length, m.
    pub length: f64,
    /// Departure azimuth/elevation at tx, degrees.
    pub aod_deg: (f64, f64),
    /// Arrival azimuth/elevation at rx, degrees (direction the wave comes
    /// from, seen from rx).
    pub aoa_deg: (f64, f64),
    /// Complex amplitude dyadic mapping tx (V, H) to rx (V, H) at the
    /// center frequency; includes spreading, interaction coefficients and
    /// vegetation loss.
    pub gain: Dyadic2x2,
}

impl PropagationPath {
    pub fn is_los(&self) -> bool {
        self.interactions.is_empty()
    }

    /// Mean power gain over the two transmit polarizations, dB.
    pub fn power_db(&self) -> f64 {
        10.0 * self.gain.mean_power_gain().max(1e-300).log10()
    }

    pub fn mechanism_label(&self) -> String {
        if self.interactions.is_empty() {
            "LOS".to_string()
        } else {
            self.interactions
                .iter()
                .map(|i| i.label())
                .collect::<Vec<_>>()
                .join(">")
        }
    }

    fn canonical_key(&self) -> (u64, Vec<(u8, u32, u32)>) {
        (
            self.delay.to_bits(),
            self.interactions.iter().map(|i| i.sort_key()).collect(),
        )
    }
}

/// Tracing configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceConfig {
    /// Maximum specular reflection order, 0..=10.
    pub max_reflection_order: u32,
    pub enable_diffraction: bool,
    pub enable_scattering: bool,
    pub enable_vegetation: bool,
    /// Edge length of the scattering tiles, m.
    pub scatter_tile_size: f64,
    /// Center frequency all interaction coefficients are evaluated at, Hz.
    pub center_frequency: f64,
    /// Paths with mean power gain below this threshold are culled, dB.
    pub min_path_gain_db: f64,
}

impl TraceConfig {
    pub fn new(center_frequency: f64) -> TraceConfig {
        TraceConfig {
            max_reflection_order: 2,
            enable_diffraction: true,
            enable_scattering: true,
            enable_vegetation: true,
            scatter_tile_size: 1.0,
            center_frequency,
            min_path_gain_db: -250.0,
        }
    }

    pub fn validate(&self) -> Result<(), TraceError> {
        if self.max_reflection_order > 10 {
            return Err(TraceError::InvalidConfig(format!(
                "max_reflection_order {} exceeds 10",
                self.max_reflection_order
            )));
        }
        if !(self.scatter_tile_size > 0.0) {
            return Err(TraceError::InvalidConfig("scatter_tile_size must be > 0".into()));
        }
        if !(self.center_frequency > 0.0) {
            return Err(TraceError::InvalidConfig("center_frequency must be > 0".into()));
        }
        Ok(())
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.center_frequency / C0
    }
}

/// Angles of departure/arrival from the first and last path segments.
fn path_angles(points: &[Vec3]) -> ((f64, f64), (f64, f64)) {
    let first = (points[1] - points[0]).normalized();
    let last = (points[points.len() - 1] - points[points.len() - 2]).normalized();
    (first.to_az_el_deg(), (-last).to_az_el_deg())
}

fn path_length(points: &[Vec3]) -> f64 {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Line-of-sight path, if unobstructed.
pub fn trace_los(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Result<Option<PropagationPath>, TraceError> {
    if tx.dist(rx) < 1e-12 {
        return Err(TraceError::CoincidentEndpoints);
    }
    cfg.validate()?;
    Ok(reflect::los_path(scene, tx, rx, cfg))
}

/// All specular reflection paths up to `cfg.max_reflection_order`.
pub fn trace_reflections(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Result<Vec<PropagationPath>, TraceError> {
    if tx.dist(rx) < 1e-12 {
        return Err(TraceError::CoincidentEndpoints);
    }
    cfg.validate()?;
    Ok(reflect::reflection_paths(scene, tx, rx, cfg))
}

/// Single-diffraction paths over the scene's wedges.
pub fn trace_diffraction(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
) -> Result<Vec<PropagationPath>, TraceError> {
    if tx.dist(rx) < 1e-12 {
        return Err(TraceError::CoincidentEndpoints);
    }
    cfg.validate()?;
    if !cfg.enable_diffraction {
        return Ok(Vec::new());
    }
    Ok(diffract::diffraction_paths(scene, tx, rx, cfg))
}

/// Single-bounce scattered paths from surface tiles. Tile phases come from
/// an RNG seeded by (`phase_seed`, surface id, tile id), so the result does
/// not depend on iteration order; pass the snapshot index as the seed when
/// sweeping.
pub fn trace_scattering(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
    phase_seed: u64,
) -> Result<Vec<PropagationPath>, TraceError> {
    if tx.dist(rx) < 1e-12 {
        return Err(TraceError::CoincidentEndpoints);
    }
    cfg.validate()?;
    if !cfg.enable_scattering {
        return Ok(Vec::new());
    }
    Ok(scatter::scattering_paths(scene, tx, rx, cfg, phase_seed))
}

/// Union of all four mechanisms, culled by `min_path_gain_db`, sorted by
/// the canonical (delay, chain) key.
pub fn trace_all(
    scene: &Scene,
    tx: Vec3,
    rx: Vec3,
    cfg: &TraceConfig,
    phase_seed: u64,
) -> Result<Vec<PropagationPath>, TraceError> {
    let mut paths = Vec::new();
    if let Some(los) = trace_los(scene, tx, rx, cfg)? {
        paths.push(los);
    }
    if cfg.max_reflection_order > 0 {
        paths.extend(trace_reflections(scene, tx, rx, cfg)?);
    }
    paths.extend(trace_diffraction(scene, tx, rx, cfg)?);
    paths.extend(trace_scattering(scene, tx, rx, cfg, phase_seed)?);

    paths.retain(|p| p.power_db() >= cfg.min_path_gain_db);
    paths.sort_by(|a, b| a.canonical_key().cmp(&b.canonical_key()));
    paths.dedup_by(|a, b| a.canonical_key() == b.canonical_key());
    Ok(paths)
}

/// Deterministic per-tile RNG used for scattering phases.
pub(crate) fn tile_rng(phase_seed: u64, surface: u32, tile: u32) -> ChaCha8Rng {
    use rand::SeedableRng;
    // splitmix-style mixing of the three components
    let mut z = phase_seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add((surface as u64) << 32 | tile as u64);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    ChaCha8Rng::seed_from_u64(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::em::MaterialDb;
    use crate::scene::{ObjectClass, Scene, SceneMetadata, Surface};

    pub(crate) fn empty_scene() -> Scene {
        Scene::assemble(MaterialDb::builtin(), Vec::new(), SceneMetadata::default()).unwrap()
    }

    pub(crate) fn single_wall() -> Scene {
        // wall in the x=5 plane facing -x
        let wall = Surface::new(
            0,
            vec![
                Vec3::new(5.0, -5.0, -5.0),
                Vec3::new(5.0, -5.0, 5.0),
                Vec3::new(5.0, 5.0, 5.0),
                Vec3::new(5.0, 5.0, -5.0),
            ],
            0,
            ObjectClass::Barrier,
            0,
        )
        .unwrap();
        Scene::assemble(MaterialDb::builtin(), vec![wall], SceneMetadata::default()).unwrap()
    }

    #[test]
    fn los_in_empty_scene_has_geometric_delay() {
        let scene = empty_scene();
        let cfg = TraceConfig::new(60e9);
        let p = trace_los(&scene, Vec3::ZERO, Vec3::new(300.0, 0.0, 0.0), &cfg)
            .unwrap()
            .unwrap();
        assert!((p.delay * 1e6 - 1.0007).abs() < 1e-4);
        assert!((p.delay - p.length / C0).abs() < 1e-12);
        assert!(p.is_los());
    }

    #[test]
    fn wall_blocks_los() {
        let scene = single_wall();
        let cfg = TraceConfig::new(60e9);
        let p = trace_los(&scene, Vec3::ZERO, Vec3::new(10.0, 0.0, 0.0), &cfg).unwrap();
        assert!(p.is_none());
        // off to the side the wall does not block
        let p = trace_los(&scene, Vec3::ZERO, Vec3::new(10.0, 20.0, 0.0), &cfg).unwrap();
        assert!(p.is_some());
    }

    #[test]
    fn coincident_endpoints_rejected() {
        let scene = empty_scene();
        let cfg = TraceConfig::new(60e9);
        assert!(trace_los(&scene, Vec3::ZERO, Vec3::ZERO, &cfg).is_err());
    }

    #[test]
    fn config_bounds() {
        let mut cfg = TraceConfig::new(60e9);
        cfg.max_reflection_order = 11;
        assert!(cfg.validate().is_err());
        cfg.max_reflection_order = 10;
        cfg.scatter_tile_size = 0.0;
        assert!(cfg.validate().is_err());
    }
}
