//! Electromagnetic primitives.
//!
//! Sign convention used throughout the crate: time dependence e^{+jωt},
//! so a lossy medium has complex relative permittivity ε = ε′ − jε″ with
//! ε″ = ε′·tanδ ≥ 0, and a forward-travelling wave carries the phase factor
//! e^{−jkd}. All interaction coefficients are evaluated at the band center
//! frequency; the per-frequency phase term is applied when the channel
//! transfer function is assembled.

mod dyadic;
mod fresnel;
pub(crate) mod material;
mod propagation;
mod scatter;
mod utd;

pub use dyadic::Dyadic2x2;
pub use fresnel::fresnel;
pub use material::{
    material_table, parse_materials, write_materials, ComplexPermittivity, Material, MaterialDb,
};
pub use propagation::{free_space_gain, free_space_loss_db, vegetation_loss_db};
pub use scatter::scatter_gain;
pub use utd::{fresnel_integrals, pec_face, transition_function, utd_coefficient, UtdGeometry};

use thiserror::Error;

/// Errors from the electromagnetic primitives.
#[derive(Debug, Error)]
pub enum EmError {
    #[error("incidence angle {0} rad outside [0, pi/2)")]
    IncidenceOutOfRange(f64),
    #[error("distance or area must be positive, got {0}")]
    NonPositiveExtent(f64),
    #[error("degenerate wedge geometry: {0}")]
    DegenerateWedge(&'static str),
    #[error("material `{0}` not found")]
    UnknownMaterial(String),
    #[error("materials file, line {line}: {message}")]
    MaterialParse { line: usize, message: String },
}
