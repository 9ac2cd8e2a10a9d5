//! Minimal 3D vector and planar-polygon toolkit.
//!
//! All scene geometry is built from convex planar polygons, so the
//! operations here stay deliberately small: vector algebra, plane tests,
//! mirroring, segment/plane intersection, point-in-convex-polygon with an
//! epsilon margin, polygon area/centroid and convex clipping.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Geometric tolerance in meters used for coplanarity and containment tests.
pub const GEOM_EPS: f64 = 1e-6;

/// 3D point / vector with f64 components, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: Vec3 = Vec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Vec3 = Vec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector in the same direction. Panics on the zero vector in debug
    /// builds; callers must guard degenerate input.
    pub fn normalized(self) -> Vec3 {
        let n = self.norm();
        debug_assert!(n > 0.0, "normalizing zero vector");
        self / n
    }

    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    /// Any unit vector orthogonal to `self` (which must be non-zero),
    /// chosen deterministically.
    pub fn any_orthogonal(self) -> Vec3 {
        let a = if self.x.abs() < 0.9 * self.norm() { Vec3::X } else { Vec3::Y };
        self.cross(a).normalized()
    }

    /// Azimuth/elevation of a direction vector, degrees.
    /// Azimuth in [-180, 180), elevation in [-90, 90].
    pub fn to_az_el_deg(self) -> (f64, f64) {
        let d = self.normalized();
        let mut az = d.y.atan2(d.x).to_degrees();
        if az >= 180.0 {
            az -= 360.0;
        }
        let el = d.z.clamp(-1.0, 1.0).asin().to_degrees();
        (az, el)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// Oriented plane `n . x = d` with unit normal.
#[derive(Debug, Clone, Copy)]
pub struct Plane {
    pub normal: Vec3,
    pub d: f64,
}

impl Plane {
    pub fn from_point_normal(p: Vec3, normal: Vec3) -> Plane {
        let n = normal.normalized();
        Plane { normal: n, d: n.dot(p) }
    }

    /// Signed distance of a point from the plane (positive on the normal side).
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        self.normal.dot(p) - self.d
    }

    /// Mirror image of a point across the plane.
    pub fn mirror(&self, p: Vec3) -> Vec3 {
        p - self.normal * (2.0 * self.signed_distance(p))
    }

    /// Parameter t in [0,1] where segment a->b crosses the plane, if it does.
    pub fn segment_intersection(&self, a: Vec3, b: Vec3) -> Option<f64> {
        let da = self.signed_distance(a);
        let db = self.signed_distance(b);
        if (da > 0.0) == (db > 0.0) {
            return None;
        }
        let denom = da - db;
        if denom.abs() < 1e-300 {
            return None;
        }
        Some(da / denom)
    }
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn empty() -> Aabb {
        Aabb {
            min: Vec3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            max: Vec3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    pub fn include(&mut self, p: Vec3) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.min.z = self.min.z.min(p.z);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
        self.max.z = self.max.z.max(p.z);
    }

    pub fn contains(&self, p: Vec3) -> bool {
        p.x >= self.min.x
            && p.x <= self.max.x
            && p.y >= self.min.y
            && p.y <= self.max.y
            && p.z >= self.min.z
            && p.z <= self.max.z
    }
}

/// Newell-style polygon normal (not normalized); magnitude is twice the area.
pub fn polygon_normal_raw(vertices: &[Vec3]) -> Vec3 {
    let mut n = Vec3::ZERO;
    for i in 0..vertices.len() {
        let a = vertices[i];
        let b = vertices[(i + 1) % vertices.len()];
        n = n + a.cross(b);
    }
    n
}

/// Area of a planar polygon.
pub fn polygon_area(vertices: &[Vec3]) -> f64 {
    0.5 * polygon_normal_raw(vertices).norm()
}

/// Centroid of a planar convex polygon (area-weighted triangle fan).
pub fn polygon_centroid(vertices: &[Vec3]) -> Vec3 {
    let origin = vertices[0];
    let mut area_sum = 0.0;
    let mut weighted = Vec3::ZERO;
    for i in 1..vertices.len() - 1 {
        let a = vertices[i] - origin;
        let b = vertices[i + 1] - origin;
        let tri_area = 0.5 * a.cross(b).norm();
        let tri_centroid = origin + (a + b) / 3.0;
        area_sum += tri_area;
        weighted = weighted + tri_centroid * tri_area;
    }
    if area_sum <= 0.0 {
        // degenerate: fall back to vertex mean
        let mut m = Vec3::ZERO;
        for v in vertices {
            m = m + *v;
        }
        return m / vertices.len() as f64;
    }
    weighted / area_sum
}

/// Max deviation of the vertices from their best-fit (first-triangle) plane.
pub fn coplanarity_deviation(vertices: &[Vec3]) -> f64 {
    let n = polygon_normal_raw(vertices);
    let nn = n.norm();
    if nn == 0.0 {
        return f64::INFINITY;
    }
    let unit = n / nn;
    let d0 = unit.dot(vertices[0]);
    vertices
        .iter()
        .map(|v| (unit.dot(*v) - d0).abs())
        .fold(0.0, f64::max)
}

/// True if the planar polygon is convex with counterclockwise winding about
/// its Newell normal.
pub fn is_convex_ccw(vertices: &[Vec3]) -> bool {
    if vertices.len() < 3 {
        return false;
    }
    let n = polygon_normal_raw(vertices);
    if n.norm() < 1e-12 {
        return false;
    }
    for i in 0..vertices.len() {
        let a = vertices[i];
        let b = vertices[(i + 1) % vertices.len()];
        let c = vertices[(i + 2) % vertices.len()];
        let turn = (b - a).cross(c - b).dot(n);
        if turn < -GEOM_EPS * n.norm() {
            return false;
        }
    }
    true
}

/// Point-in-convex-polygon test with an inclusive margin: points within
/// `margin` of the boundary (on either side) count as inside. The point is
/// assumed to lie on (or near) the polygon plane.
pub fn point_in_convex_polygon(p: Vec3, vertices: &[Vec3], normal: Vec3, margin: f64) -> bool {
    for i in 0..vertices.len() {
        let a = vertices[i];
        let b = vertices[(i + 1) % vertices.len()];
        let edge = b - a;
        let inward = normal.cross(edge);
        let len = inward.norm();
        if len < 1e-300 {
            continue;
        }
        if inward.dot(p - a) / len < -margin {
            return false;
        }
    }
    true
}

/// Clip a convex polygon against the half-space `n . x <= limit`
/// (Sutherland-Hodgman step). Returns an empty vec when fully outside.
pub fn clip_polygon_halfspace(vertices: &[Vec3], n: Vec3, limit: f64) -> Vec<Vec3> {
    let mut out = Vec::with_capacity(vertices.len() + 1);
    for i in 0..vertices.len() {
        let a = vertices[i];
        let b = vertices[(i + 1) % vertices.len()];
        let da = n.dot(a) - limit;
        let db = n.dot(b) - limit;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            let t = da / (da - db);
            out.push(a + (b - a) * t);
        }
    }
    out
}

/// Closest parameter t of the infinite line a + t*(b-a) to point p.
pub fn line_closest_param(a: Vec3, b: Vec3, p: Vec3) -> f64 {
    let ab = b - a;
    ab.dot(p - a) / ab.norm_sq()
}
