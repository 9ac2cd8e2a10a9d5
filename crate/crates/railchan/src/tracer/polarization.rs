//! Polarization bookkeeping along a path.
//!
//! Field coefficients travel as 2-vectors in an orthonormal transverse
//! basis. The chain starts in the tx (V, H) basis derived from the
//! departure direction, rotates into each interaction's local basis,
//! applies the interaction dyadic, and finally projects onto the rx (V, H)
//! basis derived from the arrival vector (pointing from rx back along the
//! ray). With that convention the full path dyadic transposes exactly
//! under exchange of tx and rx.

use crate::em::Dyadic2x2;
use crate::geom::Vec3;

/// (vertical, horizontal) unit vectors transverse to direction `d`:
/// e_h = ẑ × d normalized, e_v = d × e_h. For a horizontal `d`, e_v points
/// up. A vertical `d` degenerates; e_h falls back to ŷ.
pub fn vh_basis(d: Vec3) -> (Vec3, Vec3) {
    let w = Vec3::Z.cross(d);
    let e_h = if w.norm() < 1e-9 { Vec3::Y } else { w.normalized() };
    let e_v = d.cross(e_h).normalized();
    (e_v, e_h)
}

/// Running polarization frame along a path: an orthonormal pair transverse
/// to the current propagation direction, plus the accumulated dyadic that
/// maps tx (V, H) coefficients into that frame.
pub struct PolarizationChain {
    u1: Vec3,
    u2: Vec3,
    acc: Dyadic2x2,
}

impl PolarizationChain {
    /// Start a chain in the tx (V, H) basis for departure direction `d`.
    pub fn start(d: Vec3) -> PolarizationChain {
        let (e_v, e_h) = vh_basis(d);
        PolarizationChain { u1: e_v, u2: e_h, acc: Dyadic2x2::identity() }
    }

    /// Rotate into the local in-basis (l1, l2), apply the interaction
    /// dyadic expressed in (l1, l2) -> (o1, o2), and continue in the
    /// out-basis.
    pub fn interact(&mut self, l1: Vec3, l2: Vec3, dyadic: &Dyadic2x2, o1: Vec3, o2: Vec3) {
        let rot = Dyadic2x2::from_real([
            [self.u1.dot(l1), self.u2.dot(l1)],
            [self.u1.dot(l2), self.u2.dot(l2)],
        ]);
        self.acc = *dyadic * rot * self.acc;
        self.u1 = o1;
        self.u2 = o2;
    }

    /// Project onto the rx (V, H) basis. `arrival_dir` points along the
    /// last segment (toward rx); the rx basis is built from its reverse.
    pub fn finish(self, arrival_dir: Vec3) -> Dyadic2x2 {
        let (e_v, e_h) = vh_basis(-arrival_dir);
        let rot = Dyadic2x2::from_real([
            [self.u1.dot(e_v), self.u2.dot(e_v)],
            [self.u1.dot(e_h), self.u2.dot(e_h)],
        ]);
        rot * self.acc
    }
}

/// Local (soft, hard) reflection basis at a surface: ê_s perpendicular to
/// the plane of incidence, p̂ = ê_s × direction for the incoming and
/// outgoing rays. At normal incidence the plane is undefined and any
/// transverse pair works; a deterministic fallback is used.
pub fn reflection_basis(d_in: Vec3, normal: Vec3, d_out: Vec3) -> (Vec3, Vec3, Vec3) {
    let w = d_in.cross(normal);
    let e_s = if w.norm() < 1e-9 {
        normal.any_orthogonal()
    } else {
        w.normalized()
    };
    let p_in = e_s.cross(d_in).normalized();
    let p_out = e_s.cross(d_out).normalized();
    (e_s, p_in, p_out)
}
