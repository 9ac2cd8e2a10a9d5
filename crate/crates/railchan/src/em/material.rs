//! Material database.
//!
//! The built-in table holds the eight railway-scenario materials with their
//! relative permittivity and loss tangent, together with default diffuse
//! scattering parameters (S, α_R) and the specific attenuation used for
//! vegetation volumes. The table can be overridden from a structured-text
//! materials file, one record per material:
//!
//! ```text
//! m <name> <eps_r> <tan_delta> <S> <alpha> <veg>
//! ```
//!
//! Names are encoded with underscores in place of spaces.

use super::EmError;
use num_complex::Complex64;

/// Named dielectric.
#[derive(Debug, Clone, PartialEq)]
pub struct Material {
    pub name: String,
    /// Real relative permittivity ε′_r, dimensionless, ≥ 1.
    pub eps_r: f64,
    /// Loss tangent tanδ, dimensionless, ≥ 0.
    pub tan_delta: f64,
    /// Diffuse scattering coefficient S ∈ [0, 1].
    pub scatter_s: f64,
    /// Directive-lobe exponent α_R ≥ 1.
    pub scatter_alpha: u32,
    /// Specific attenuation in dB/m; nonzero only for vegetation.
    pub veg_atten: f64,
}

impl Material {
    pub fn permittivity(&self) -> ComplexPermittivity {
        ComplexPermittivity::new(self.eps_r, self.tan_delta)
    }

    fn validate(&self, line: usize) -> Result<(), EmError> {
        let bad = |message: String| EmError::MaterialParse { line, message };
        if !(self.eps_r >= 1.0) {
            return Err(bad(format!("eps_r must be >= 1, got {}", self.eps_r)));
        }
        if !(self.tan_delta >= 0.0) {
            return Err(bad(format!("tan_delta must be >= 0, got {}", self.tan_delta)));
        }
        if !(0.0..=1.0).contains(&self.scatter_s) {
            return Err(bad(format!("scatter_s must be in [0,1], got {}", self.scatter_s)));
        }
        if self.scatter_alpha < 1 {
            return Err(bad("scatter_alpha must be >= 1".into()));
        }
        if !(self.veg_atten >= 0.0) {
            return Err(bad(format!("veg_atten must be >= 0, got {}", self.veg_atten)));
        }
        Ok(())
    }
}

/// Complex relative permittivity ε = ε′_r (1 − j tanδ) under the e^{+jωt}
/// convention: real part ≥ 1, imaginary part ≤ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPermittivity(pub Complex64);

impl ComplexPermittivity {
    pub fn new(eps_r: f64, tan_delta: f64) -> Self {
        ComplexPermittivity(Complex64::new(eps_r, -eps_r * tan_delta))
    }

    pub fn value(&self) -> Complex64 {
        self.0
    }
}

const DEFAULT_SCATTER_S: f64 = 0.4;
const DEFAULT_SCATTER_ALPHA: u32 = 4;
const DEFAULT_VEG_ATTEN_DB_PER_M: f64 = 2.0;

/// The built-in material table, in declaration order.
///
/// Scattering parameters and the vegetation attenuation are defaults typical
/// of the directive-lobe literature and can be overridden from a materials
/// file; the permittivity/loss pairs are the railway-scenario values.
pub fn material_table() -> Vec<Material> {
    let m = |name: &str, eps_r: f64, tan_delta: f64, scatter_s: f64, veg: f64| Material {
        name: name.to_string(),
        eps_r,
        tan_delta,
        scatter_s,
        scatter_alpha: DEFAULT_SCATTER_ALPHA,
        veg_atten: veg,
    };
    vec![
        m("Metal", 1.00, 1e7, DEFAULT_SCATTER_S, 0.0),
        m("Concrete", 1.06, 0.65, DEFAULT_SCATTER_S, 0.0),
        m("Aluminium alloy", 1.29, 1e7, DEFAULT_SCATTER_S, 0.0),
        m("LED", 3.74, 3.14, DEFAULT_SCATTER_S, 0.0),
        m("Tempered glass", 10.00, 0.43, DEFAULT_SCATTER_S, 0.0),
        m("Vegetation", 29.12, 0.278, DEFAULT_SCATTER_S, DEFAULT_VEG_ATTEN_DB_PER_M),
        m("Smooth marble", 1.96, 0.30, DEFAULT_SCATTER_S, 0.0),
        m("Ceramic tile", 1.85, 0.07, DEFAULT_SCATTER_S, 0.0),
    ]
}

/// An ordered, name-indexed material collection.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialDb {
    materials: Vec<Material>,
}

impl MaterialDb {
    pub fn builtin() -> Self {
        MaterialDb { materials: material_table() }
    }

    pub fn from_materials(materials: Vec<Material>) -> Self {
        MaterialDb { materials }
    }

    pub fn materials(&self) -> &[Material] {
        &self.materials
    }

    pub fn get(&self, name: &str) -> Result<&Material, EmError> {
        self.materials
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| EmError::UnknownMaterial(name.to_string()))
    }

    pub fn index_of(&self, name: &str) -> Result<usize, EmError> {
        self.materials
            .iter()
            .position(|m| m.name == name)
            .ok_or_else(|| EmError::UnknownMaterial(name.to_string()))
    }

    pub fn by_index(&self, idx: usize) -> &Material {
        &self.materials[idx]
    }

    /// Insert or replace a material by name, returning its index.
    pub fn upsert(&mut self, material: Material) -> usize {
        if let Some(i) = self.materials.iter().position(|m| m.name == material.name) {
            self.materials[i] = material;
            i
        } else {
            self.materials.push(material);
            self.materials.len() - 1
        }
    }
}

pub(crate) fn encode_name(name: &str) -> String {
    name.replace(' ', "_")
}

pub(crate) fn decode_name(token: &str) -> String {
    token.replace('_', " ")
}

/// Parse one `m` record (without the leading tag) into a material.
pub(crate) fn parse_material_record(fields: &[&str], line: usize) -> Result<Material, EmError> {
    if fields.len() != 6 {
        return Err(EmError::MaterialParse {
            line,
            message: format!("expected 6 fields in material record, got {}", fields.len()),
        });
    }
    let num = |s: &str, what: &str| -> Result<f64, EmError> {
        s.parse::<f64>().map_err(|_| EmError::MaterialParse {
            line,
            message: format!("bad {what}: `{s}`"),
        })
    };
    let material = Material {
        name: decode_name(fields[0]),
        eps_r: num(fields[1], "eps_r")?,
        tan_delta: num(fields[2], "tan_delta")?,
        scatter_s: num(fields[3], "scatter_s")?,
        scatter_alpha: fields[4].parse::<u32>().map_err(|_| EmError::MaterialParse {
            line,
            message: format!("bad scatter_alpha: `{}`", fields[4]),
        })?,
        veg_atten: num(fields[5], "veg_atten")?,
    };
    material.validate(line)?;
    Ok(material)
}

pub(crate) fn format_material_record(m: &Material) -> String {
    format!(
        "m {} {} {} {} {} {}",
        encode_name(&m.name),
        m.eps_r,
        m.tan_delta,
        m.scatter_s,
        m.scatter_alpha,
        m.veg_atten
    )
}

/// Parse a standalone materials file: `m` records, blank lines and `#`
/// comments allowed.
pub fn parse_materials(text: &str) -> Result<MaterialDb, EmError> {
    let mut materials = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields[0] != "m" {
            return Err(EmError::MaterialParse {
                line,
                message: format!("expected `m` record, got `{}`", fields[0]),
            });
        }
        materials.push(parse_material_record(&fields[1..], line)?);
    }
    Ok(MaterialDb::from_materials(materials))
}

/// Serialize a material collection as a materials file.
pub fn write_materials(db: &MaterialDb) -> String {
    let mut out = String::new();
    for m in db.materials() {
        out.push_str(&format_material_record(m));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_holds_the_eight_materials() {
        let table = material_table();
        assert_eq!(table.len(), 8);
        let names: Vec<&str> = table.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(
            names,
            [
                "Metal",
                "Concrete",
                "Aluminium alloy",
                "LED",
                "Tempered glass",
                "Vegetation",
                "Smooth marble",
                "Ceramic tile"
            ]
        );
        for m in &table {
            assert!(m.eps_r >= 1.0);
            assert!(m.tan_delta >= 0.0);
            assert!((0.0..=1.0).contains(&m.scatter_s));
            assert!(m.scatter_alpha >= 1);
        }
    }

    #[test]
    fn table_lookups() {
        let db = MaterialDb::builtin();
        let metal = db.get("Metal").unwrap();
        assert_eq!((metal.eps_r, metal.tan_delta), (1.00, 1e7));
        let concrete = db.get("Concrete").unwrap();
        assert_eq!((concrete.eps_r, concrete.tan_delta), (1.06, 0.65));
        let veg = db.get("Vegetation").unwrap();
        assert_eq!((veg.eps_r, veg.tan_delta), (29.12, 0.278));
        assert!(veg.veg_atten > 0.0);
        assert!(db.get("Adamantium").is_err());
    }

    #[test]
    fn permittivity_convention() {
        let eps = ComplexPermittivity::new(1.06, 0.65).value();
        assert!(eps.re >= 1.0);
        assert!(eps.im <= 0.0);
        assert!((eps.im + 1.06 * 0.65).abs() < 1e-12);
    }

    #[test]
    fn materials_file_roundtrip() {
        let db = MaterialDb::builtin();
        let text = write_materials(&db);
        let back = parse_materials(&text).unwrap();
        assert_eq!(db, back);
    }

    #[test]
    fn materials_file_errors_carry_line() {
        let err = parse_materials("m OnlyThree 1.0 0.1\n").unwrap_err();
        match err {
            EmError::MaterialParse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected error {other:?}"),
        }
        let err = parse_materials("\n\nm Bad 0.5 0.1 0.4 4 0\n").unwrap_err();
        match err {
            EmError::MaterialParse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
