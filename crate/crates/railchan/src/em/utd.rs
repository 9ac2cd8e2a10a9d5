//! Uniform theory of diffraction wedge coefficients.
//!
//! Kouyoumjian-Pathak coefficients for a straight wedge of exterior angle
//! nπ, extended to finitely conducting faces by weighting the two
//! reflection-boundary cotangent terms with the Fresnel coefficients of the
//! respective face (Luebbers' heuristic; a PEC wedge uses R = (−1, +1) and
//! recovers the classical form). The transition regions around the
//! incidence and reflection shadow boundaries are handled with the
//! Fresnel-integral transition function, including the closed-form limit
//! when an angle falls numerically on a boundary, so the total field stays
//! continuous across both boundaries.
//!
//! Angles follow the usual edge-fixed convention: φ′ (incidence) and φ
//! (diffraction) are measured from the o-face through the exterior region,
//! both in [0, nπ]; β₀ is the angle between the incident ray and the edge.

use super::{Dyadic2x2, EmError};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, PI};

/// Fresnel cosine and sine integrals C(x) = ∫₀ˣ cos(πt²/2) dt,
/// S(x) = ∫₀ˣ sin(πt²/2) dt.
///
/// Power series below |x| = 3.5, asymptotic expansion of the complementary
/// integral above; absolute error stays below ~1e-8 over the full range.
pub fn fresnel_integrals(x: f64) -> (f64, f64) {
    let ax = x.abs();
    let (c, s) = if ax < 3.5 {
        fresnel_series(ax)
    } else {
        fresnel_asymptotic(ax)
    };
    if x < 0.0 {
        (-c, -s)
    } else {
        (c, s)
    }
}

fn fresnel_series(x: f64) -> (f64, f64) {
    let hp = PI / 2.0;
    let x4 = x.powi(4);

    let mut c = 0.0;
    let mut term = x; // (−1)ⁿ (π/2)^{2n} x^{4n+1} / (2n)!
    let mut n = 0u32;
    loop {
        c += term / (4 * n + 1) as f64;
        let f = (2 * n + 1) as f64 * (2 * n + 2) as f64;
        term *= -hp * hp * x4 / f;
        n += 1;
        if term.abs() < 1e-18 || n > 60 {
            break;
        }
    }

    let mut s = 0.0;
    let mut term = hp * x * x * x; // (−1)ⁿ (π/2)^{2n+1} x^{4n+3} / (2n+1)!
    let mut n = 0u32;
    loop {
        s += term / (4 * n + 3) as f64;
        let f = (2 * n + 2) as f64 * (2 * n + 3) as f64;
        term *= -hp * hp * x4 / f;
        n += 1;
        if term.abs() < 1e-18 || n > 60 {
            break;
        }
    }
    (c, s)
}

fn fresnel_asymptotic(x: f64) -> (f64, f64) {
    // complementary integral I(x) = ∫ₓ^∞ e^{jπt²/2} dt
    //                            ~ (j e^{jπx²/2} / πx) Σ (2m−1)!! (−j/πx²)^m,
    // truncated at the smallest term; C = 1/2 − Re I, S = 1/2 − Im I.
    let a = PI * x * x;
    let mut sum = Complex64::ONE;
    let mut term = Complex64::ONE;
    let mut m = 0u32;
    loop {
        m += 1;
        let next = term * (2 * m - 1) as f64 * Complex64::new(0.0, -1.0 / a);
        if next.norm() >= term.norm() || next.norm() < 1e-17 {
            break;
        }
        term = next;
        sum += term;
    }
    let i = Complex64::new(0.0, 1.0 / (PI * x)) * Complex64::from_polar(1.0, a / 2.0) * sum;
    (0.5 - i.re, 0.5 - i.im)
}

/// UTD transition function F(X) = 2j√X e^{jX} ∫_{√X}^∞ e^{−jτ²} dτ for X ≥ 0.
///
/// |F| → 1 far from a shadow boundary (large argument) and F → 0 like
/// √(πX) e^{j(π/4+X)} on approach to one.
pub fn transition_function(x: f64) -> Complex64 {
    if x <= 0.0 {
        return Complex64::ZERO;
    }
    let s = (2.0 * x / PI).sqrt();
    let (c, si) = fresnel_integrals(s);
    let tail = Complex64::new(0.5 - c, -(0.5 - si)) * (PI / 2.0).sqrt();
    Complex64::new(0.0, 2.0 * x.sqrt()) * Complex64::from_polar(1.0, x) * tail
}

/// Edge-fixed diffraction geometry for one wedge interaction.
#[derive(Debug, Clone, Copy)]
pub struct UtdGeometry {
    /// Exterior wedge angle divided by π, in (1, 2]; 2 is a half-plane.
    pub n: f64,
    /// Wavenumber, rad/m.
    pub k: f64,
    /// Incidence azimuth φ′ from the o-face, rad, in [0, nπ].
    pub phi_inc: f64,
    /// Diffraction azimuth φ from the o-face, rad, in [0, nπ].
    pub phi_dif: f64,
    /// Angle between the incident ray and the edge, rad, in (0, π).
    pub beta0: f64,
    /// Source-to-edge distance, m.
    pub s_inc: f64,
    /// Edge-to-receiver distance, m.
    pub s_dif: f64,
}

impl UtdGeometry {
    /// Spherical-wave distance parameter L = s s′ sin²β₀ / (s + s′).
    pub fn distance_parameter(&self) -> f64 {
        self.s_inc * self.s_dif * self.beta0.sin().powi(2) / (self.s_inc + self.s_dif)
    }
}

// a^±(β) = 2 cos²((2nπN^± − β)/2) with N^± the integer closest to
// (β ± π)/(2nπ); ε is the signed deviation from the associated boundary.
fn a_param(beta: f64, n: f64, sign_plus: bool) -> (f64, f64) {
    let target = if sign_plus { beta + PI } else { beta - PI };
    let big_n = (target / (2.0 * n * PI)).round();
    let arg = (2.0 * n * PI * big_n - beta) / 2.0;
    let a = 2.0 * arg.cos().powi(2);
    // boundary where the paired cotangent blows up: cot((π ± β)/(2n)) is
    // singular when (π ± β)/(2n) = mπ, i.e. β = ±(2nmπ − π); the deviation
    // doubles as the small angle in the cotangent argument.
    let eps = if sign_plus {
        // cot((π + β)/(2n)) singular at β = 2nπN⁺ − π
        beta - (2.0 * n * PI * big_n - PI)
    } else {
        // cot((π − β)/(2n)) singular at β = 2nπN⁻ + π
        beta - (2.0 * n * PI * big_n + PI)
    };
    (a, eps)
}

// One cotangent × transition term, with the Kouyoumjian-Pathak small-angle
// limit n e^{jπ/4} [√(2πkL) sgn ε − 2kLε e^{jπ/4}] applied inside the
// transition region so the product stays finite on a shadow boundary.
fn cot_transition(n: f64, k_l: f64, cot_arg: f64, a: f64, eps: f64, cot_sign: f64) -> Complex64 {
    const EPS_GUARD: f64 = 1e-5;
    if eps.abs() < EPS_GUARD {
        let sgn = if eps >= 0.0 { 1.0 } else { -1.0 };
        let e4 = Complex64::from_polar(1.0, FRAC_PI_4);
        let inner = Complex64::new((2.0 * PI * k_l).sqrt() * sgn, 0.0)
            - e4 * 2.0 * k_l * eps;
        return e4 * inner * n * cot_sign;
    }
    let cot = cot_arg.cos() / cot_arg.sin();
    transition_function(k_l * a) * cot
}

/// Kouyoumjian-Pathak diffraction dyadic for a wedge, diagonal in the
/// edge-fixed (β₀, φ) basis: diag(−D_s, −D_h) maps the incident
/// (E_{β₀′}, E_{φ′}) components to the diffracted (E_{β₀}, E_{φ})
/// components. The caller multiplies by e^{−jk(s′+s)} and the spherical
/// spreading √(s′ / (s (s′ + s))).
///
/// `refl_o` and `refl_n` are the (soft, hard) Fresnel reflection
/// coefficients of the o-face and n-face used to weight the two
/// reflection-boundary terms; pass (−1, 1) for both to get the PEC wedge.
pub fn utd_coefficient(
    geom: &UtdGeometry,
    refl_o: (Complex64, Complex64),
    refl_n: (Complex64, Complex64),
) -> Result<Dyadic2x2, EmError> {
    if !(geom.n > 1.0 && geom.n <= 2.0) {
        return Err(EmError::DegenerateWedge("exterior angle must be in (pi, 2pi]"));
    }
    if geom.s_inc <= 0.0 || geom.s_dif <= 0.0 {
        return Err(EmError::DegenerateWedge("source or receiver on the edge"));
    }
    let sin_b = geom.beta0.sin();
    if sin_b <= 1e-9 {
        return Err(EmError::DegenerateWedge("ray parallel to the edge"));
    }
    let n = geom.n;
    let k = geom.k;
    let l = geom.distance_parameter();
    let k_l = k * l;

    let beta_minus = geom.phi_dif - geom.phi_inc;
    let beta_plus = geom.phi_dif + geom.phi_inc;

    let (a_p_m, eps1) = a_param(beta_minus, n, true);
    let (a_m_m, eps2) = a_param(beta_minus, n, false);
    let (a_p_p, eps3) = a_param(beta_plus, n, true);
    let (a_m_p, eps4) = a_param(beta_plus, n, false);

    // cot((π+β)/(2n)) has cot_sign +1 near its singularity, cot((π−β)/(2n))
    // has −1: cot((π−β)/(2n)) ≈ −2n/ε for β = singular + ε.
    let t1 = cot_transition(n, k_l, (PI + beta_minus) / (2.0 * n), a_p_m, eps1, 1.0);
    let t2 = cot_transition(n, k_l, (PI - beta_minus) / (2.0 * n), a_m_m, eps2, -1.0);
    let t3 = cot_transition(n, k_l, (PI + beta_plus) / (2.0 * n), a_p_p, eps3, 1.0);
    let t4 = cot_transition(n, k_l, (PI - beta_plus) / (2.0 * n), a_m_p, eps4, -1.0);

    let prefactor = -Complex64::from_polar(1.0, -FRAC_PI_4)
        / (2.0 * n * (2.0 * PI * k).sqrt() * sin_b);

    let d_soft = prefactor * (t1 + t2 + refl_n.0 * t3 + refl_o.0 * t4);
    let d_hard = prefactor * (t1 + t2 + refl_n.1 * t3 + refl_o.1 * t4);

    Ok(Dyadic2x2::diagonal(-d_soft, -d_hard))
}

/// PEC face coefficients, handy for tests and metal wedges.
pub fn pec_face() -> (Complex64, Complex64) {
    (Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C0;

    // brute-force quadrature of ∫₀ˣ cos/sin(πt²/2) dt, independent of the
    // series/asymptotic implementation
    fn fresnel_quadrature(x: f64) -> (f64, f64) {
        let steps = (x * 40000.0).ceil().max(1000.0) as usize;
        let h = x / steps as f64;
        let mut c = 0.0;
        let mut s = 0.0;
        // composite Simpson
        for i in 0..steps {
            let t0 = i as f64 * h;
            let t1 = t0 + 0.5 * h;
            let t2 = t0 + h;
            let f = |t: f64| (PI * t * t / 2.0).cos();
            let g = |t: f64| (PI * t * t / 2.0).sin();
            c += h / 6.0 * (f(t0) + 4.0 * f(t1) + f(t2));
            s += h / 6.0 * (g(t0) + 4.0 * g(t1) + g(t2));
        }
        (c, s)
    }

    #[test]
    fn fresnel_integrals_match_quadrature() {
        for &x in &[0.1, 0.7, 1.5, 2.8, 3.4, 3.6, 5.0, 8.0] {
            let (c, s) = fresnel_integrals(x);
            let (cq, sq) = fresnel_quadrature(x);
            assert!((c - cq).abs() < 1e-7, "C({x}): {c} vs {cq}");
            assert!((s - sq).abs() < 1e-7, "S({x}): {s} vs {sq}");
        }
    }

    #[test]
    fn transition_function_limits() {
        assert!((transition_function(100.0).norm() - 1.0).abs() < 1e-2);
        assert!(transition_function(1e-4).norm() < 0.02);
        // small-argument behaviour ~ sqrt(pi X)
        let x = 1e-6;
        assert!((transition_function(x).norm() - (PI * x).sqrt()).abs() < 1e-5);
    }

    fn half_plane_geom(k: f64, phi_inc_deg: f64, phi_dif_deg: f64) -> UtdGeometry {
        UtdGeometry {
            n: 2.0,
            k,
            phi_inc: phi_inc_deg.to_radians(),
            phi_dif: phi_dif_deg.to_radians(),
            beta0: PI / 2.0,
            s_inc: 50.0,
            s_dif: 30.0,
        }
    }

    #[test]
    fn lit_region_diffraction_is_weak() {
        let k = 2.0 * PI * 30e9 / C0;
        // ISB at 230 deg for phi_inc = 50 deg; 5 deg into the lit region vs 45 deg
        let d5 = utd_coefficient(&half_plane_geom(k, 50.0, 225.0), pec_face(), pec_face())
            .unwrap();
        let d45 = utd_coefficient(&half_plane_geom(k, 50.0, 185.0), pec_face(), pec_face())
            .unwrap();
        let spread = |g: &UtdGeometry| (g.s_inc / (g.s_dif * (g.s_inc + g.s_dif))).sqrt();
        let g = half_plane_geom(k, 50.0, 225.0);
        let direct = 1.0 / (g.s_inc + g.s_dif);
        let e5 = d5.m[0][0].norm() * spread(&g) / g.s_inc;
        let e45 = d45.m[0][0].norm() * spread(&g) / g.s_inc;
        assert!(e5 / direct < 0.1, "ratio at 5 deg: {}", e5 / direct);
        assert!(e45 / direct < 0.1, "ratio at 45 deg: {}", e45 / direct);
        assert!(e45 < e5);
    }

    #[test]
    fn soft_hard_differ_by_reflection_term_sign() {
        // PEC faces: D_s = pref (t1+t2−t3−t4), D_h = pref (t1+t2+t3+t4);
        // so (−Ds) + (−Dh) = 2 pref (t1+t2) must equal twice the coefficient
        // with the reflection terms zeroed out.
        let k = 2.0 * PI * 30e9 / C0;
        let geom = half_plane_geom(k, 50.0, 160.0);
        let zero = (Complex64::ZERO, Complex64::ZERO);
        let pec = utd_coefficient(&geom, pec_face(), pec_face()).unwrap();
        let incidence_only = utd_coefficient(&geom, zero, zero).unwrap();
        let sum = pec.m[0][0] + pec.m[1][1];
        let twice = incidence_only.m[0][0] * 2.0;
        assert!((sum - twice).norm() < 1e-12 * twice.norm().max(1.0));
    }

    #[test]
    fn reciprocity_in_angles_and_distances() {
        let k = 2.0 * PI * 30e9 / C0;
        let fwd = UtdGeometry {
            n: 1.5,
            k,
            phi_inc: 0.7,
            phi_dif: 3.1,
            beta0: 1.2,
            s_inc: 42.0,
            s_dif: 13.0,
        };
        let mut back = fwd;
        std::mem::swap(&mut back.phi_inc, &mut back.phi_dif);
        std::mem::swap(&mut back.s_inc, &mut back.s_dif);
        back.beta0 = PI - fwd.beta0; // reversed ray makes the supplementary edge angle
        let r = (Complex64::new(-0.7, 0.05), Complex64::new(0.6, -0.1));
        let a = utd_coefficient(&fwd, r, r).unwrap();
        let b = utd_coefficient(&back, r, r).unwrap();
        for i in 0..2 {
            assert!(
                (a.m[i][i] - b.m[i][i]).norm() < 1e-12 * a.m[i][i].norm(),
                "entry {i}"
            );
        }
    }

    #[test]
    fn total_field_continuous_across_isb() {
        // 2D half-plane case: edge on the y-axis, screen along +x, tx at
        // 50 m / 50 deg, rx at 30 m sweeping across the ISB at 230 deg.
        // Soft polarization with E parallel to the edge projects onto the
        // edge-fixed basis as E_d = (+D_s) E_i (double sign flip through
        // beta-hat at 90 deg incidence).
        let f = 30e9;
        let k = 2.0 * PI * f / C0;
        let s_inc = 50.0_f64;
        let s_dif = 30.0_f64;
        let phi_inc = 50.0_f64.to_radians();
        let tx = (s_inc * phi_inc.cos(), s_inc * phi_inc.sin());

        let field = |phi_deg: f64| -> Complex64 {
            let phi = phi_deg.to_radians();
            let rx = (s_dif * phi.cos(), s_dif * phi.sin());
            let mut total = Complex64::ZERO;
            // LOS blocked once the segment crosses the screen {y=0, x>0}
            let los_ok = if (tx.1 > 0.0) != (rx.1 > 0.0) {
                let t = tx.1 / (tx.1 - rx.1);
                tx.0 + t * (rx.0 - tx.0) < 0.0
            } else {
                true
            };
            let d_los = ((tx.0 - rx.0).powi(2) + (tx.1 - rx.1).powi(2)).sqrt();
            if los_ok {
                total += Complex64::from_polar(1.0 / d_los, -k * d_los);
            }
            let geom = UtdGeometry {
                n: 2.0,
                k,
                phi_inc,
                phi_dif: phi,
                beta0: PI / 2.0,
                s_inc,
                s_dif,
            };
            let d = utd_coefficient(&geom, pec_face(), pec_face()).unwrap();
            let spread = (s_inc / (s_dif * (s_inc + s_dif))).sqrt();
            let amp = Complex64::from_polar(1.0 / s_inc, -k * (s_inc + s_dif));
            // projections (beta0'.y)(y.beta0) = (+1)(-1) for this geometry
            total += amp * d.m[0][0] * spread * (-1.0);
            total
        };

        let mut worst_step: f64 = 0.0;
        let mut prev = field(229.95);
        let mut deg = 229.95;
        while deg < 230.05 {
            deg += 1e-4;
            let cur = field(deg);
            let step = (20.0 * (cur.norm() / prev.norm()).log10()).abs();
            worst_step = worst_step.max(step);
            prev = cur;
        }
        assert!(worst_step < 0.5, "ISB step {worst_step} dB");
    }

    #[test]
    fn degenerate_geometry_is_rejected() {
        let k = 2.0 * PI * 30e9 / C0;
        let mut geom = half_plane_geom(k, 50.0, 100.0);
        geom.s_inc = 0.0;
        assert!(utd_coefficient(&geom, pec_face(), pec_face()).is_err());
        let mut geom = half_plane_geom(k, 50.0, 100.0);
        geom.beta0 = 0.0;
        assert!(utd_coefficient(&geom, pec_face(), pec_face()).is_err());
    }
}
