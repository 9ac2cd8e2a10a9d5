//! 2x2 complex amplitude dyadic.
//!
//! Interaction coefficients and full path gains are carried as 2x2 complex
//! matrices acting on two-component transverse field vectors. The basis
//! depends on context: (soft ⟂, hard ∥) at an interaction, (V, H) against
//! the global vertical at the link ends.

use num_complex::Complex64;
use std::ops::Mul;

/// 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dyadic2x2 {
    pub m: [[Complex64; 2]; 2],
}

impl Dyadic2x2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Dyadic2x2 { m }
    }

    pub fn zero() -> Self {
        Dyadic2x2 { m: [[Complex64::ZERO; 2]; 2] }
    }

    pub fn identity() -> Self {
        let mut d = Self::zero();
        d.m[0][0] = Complex64::ONE;
        d.m[1][1] = Complex64::ONE;
        d
    }

    pub fn diagonal(a: Complex64, b: Complex64) -> Self {
        let mut d = Self::zero();
        d.m[0][0] = a;
        d.m[1][1] = b;
        d
    }

    /// Real rotation-like matrix from basis projections.
    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Dyadic2x2 {
            m: [
                [Complex64::new(m[0][0], 0.0), Complex64::new(m[0][1], 0.0)],
                [Complex64::new(m[1][0], 0.0), Complex64::new(m[1][1], 0.0)],
            ],
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut out = *self;
        for row in out.m.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Dyadic2x2 {
            m: [[self.m[0][0], self.m[1][0]], [self.m[0][1], self.m[1][1]]],
        }
    }

    pub fn add(&self, o: &Dyadic2x2) -> Self {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] += o.m[i][j];
            }
        }
        out
    }

    /// Sum of squared magnitudes of all entries.
    pub fn frobenius_sq(&self) -> f64 {
        self.m
            .iter()
            .flatten()
            .map(|c| c.norm_sqr())
            .sum()
    }

    /// Mean received power gain over the two orthogonal transmit
    /// polarizations: (|VV|² + |VH|² + |HV|² + |HH|²)/2.
    pub fn mean_power_gain(&self) -> f64 {
        0.5 * self.frobenius_sq()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest singular value.
    pub fn max_singular_value(&self) -> f64 {
        // singular values of a 2x2: from eigenvalues of A^H A
        let a = self.m;
        let h = |i: usize, j: usize| -> Complex64 {
            a[0][i].conj() * a[0][j] + a[1][i].conj() * a[1][j]
        };
        let t = (h(0, 0) + h(1, 1)).re;
        let det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).re;
        let disc = (t * t / 4.0 - det).max(0.0).sqrt();
        (t / 2.0 + disc).max(0.0).sqrt()
    }
}

impl Mul for Dyadic2x2 {
    type Output = Dyadic2x2;
    fn mul(self, rhs: Dyadic2x2) -> Dyadic2x2 {
        let mut out = Dyadic2x2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.m[i][j] =
                    self.m[i][0] * rhs.m[0][j] + self.m[i][1] * rhs.m[1][j];
            }
        }
        out
    }
}
