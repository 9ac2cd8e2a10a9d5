//! Deterministic ray-tracing channel simulator for railway mmWave scenarios.
//!
//! The crate builds parametric 3D railway scenes, traces polarimetric
//! multipath (line of sight, specular reflections via the image method,
//! single wedge diffraction with the uniform theory of diffraction, and
//! single-bounce directive scattering), assembles wideband channel transfer
//! functions along a train trajectory, extracts the usual channel statistics
//! (path loss, shadow factor, Ricean K-factor, RMS delay spread, coherence
//! bandwidth, and the four angular spreads), and fits/synthesizes a
//! geometry-based stochastic channel model from the traced ensembles.
//!
//! The pieces are organised bottom-up:
//!
//! - [`geom`] — small 3D vector/polygon toolkit shared by everything.
//! - [`em`] — electromagnetic primitives: material table, Fresnel
//!   reflection, UTD wedge diffraction, directive scattering lobe,
//!   vegetation attenuation, free-space spreading.
//! - [`scene`] — surfaces, wedges, the six parametric scenario builders,
//!   concise-scene reduction, and scene file I/O.
//! - [`tracer`] — deterministic multipath search producing polarimetric
//!   path records.
//! - [`channel`] — trajectory sweep, CTF assembly, CIR/PDP synthesis,
//!   narrowband gain and per-path Doppler.
//! - [`stats`] — channel metric estimators and the trace comparison
//!   harness.
//! - [`stochgen`] — stochastic parameter fitting and channel synthesis.
//! - [`cli`] — configuration-driven batch front end used by the `railchan`
//!   binary and the examples.
//!
//! Everything is deterministic given the scene, the configuration and a
//! seed: repeated runs produce byte-identical outputs regardless of worker
//! count.

pub mod channel;
pub mod cli;
pub mod em;
pub mod geom;
pub mod scene;
pub mod stats;
pub mod stochgen;
pub mod tracer;

/// Speed of light in vacuum, m/s.
pub const C0: f64 = 299_792_458.0;
