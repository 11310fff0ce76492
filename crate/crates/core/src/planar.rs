//! Small 2D vector type and triangle-placement helpers used by every
//! unfolding in the crate.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self { x: c, y: s }
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` is
    /// counter-clockwise from `self`.
    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }

    /// Counter-clockwise angle in `[0, 2π)`-compatible `atan2` range from
    /// `self` to `other`.
    #[inline]
    pub fn angle_to(self, other: Vec2) -> f64 {
        self.cross(other).atan2(self.dot(other))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Area of a triangle from its side lengths (Kahan's cancellation-safe
/// form of Heron's formula). Returns 0 for degenerate or impossible input.
pub fn triangle_area(a: f64, b: f64, c: f64) -> f64 {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    if p > 0.0 {
        0.25 * p.sqrt()
    } else {
        0.0
    }
}

/// Places the apex of a triangle whose base runs from `(0, 0)` to
/// `(base, 0)`. `left` is the apex distance to the origin, `right` to the
/// far base end. The apex is returned with `y >= 0`.
pub fn place_apex(base: f64, left: f64, right: f64) -> Vec2 {
    let x = (base * base + (left - right) * (left + right)) / (2.0 * base);
    let y = 2.0 * triangle_area(base, left, right) / base;
    Vec2::new(x, y)
}

/// Interior angle opposite side `opposite` in a triangle with the two
/// adjacent sides `a` and `b`.
pub fn corner_angle(a: f64, b: f64, opposite: f64) -> f64 {
    let p = place_apex(a, b, opposite);
    p.y.atan2(p.x)
}

/// Strict triangle inequality with a relative tolerance.
pub fn is_valid_triangle(a: f64, b: f64, c: f64, rel_tol: f64) -> bool {
    let m = a.max(b).max(c);
    a > 0.0 && b > 0.0 && c > 0.0 && a + b - c > rel_tol * m && a + c - b > rel_tol * m
        && b + c - a > rel_tol * m
}

/// Parameter `mu` at which the line through `origin` with direction `dir`
/// meets the segment `start + mu * (end - start)`. `None` when parallel.
pub fn ray_segment_param(origin: Vec2, dir: Vec2, start: Vec2, end: Vec2) -> Option<f64> {
    let denom = (end - start).cross(dir);
    if denom == 0.0 || !denom.is_finite() {
        return None;
    }
    Some((origin - start).cross(dir) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn apex_of_equilateral_triangle() {
        let p = place_apex(1.0, 1.0, 1.0);
        assert!((p.x - 0.5).abs() < 1e-15);
        assert!((p.y - 3f64.sqrt() / 2.0).abs() < 1e-15);
    }

    #[test]
    fn right_angle_corner() {
        assert!((corner_angle(1.0, 1.0, 2f64.sqrt()) - PI / 2.0).abs() < 1e-14);
        assert!((corner_angle(3.0, 4.0, 5.0) - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn heron_is_stable_for_needles() {
        // Isoceles needle with legs 1/2 + 2^-30 on a unit base; its height
        // is sqrt(δ + δ²), about 3e-5.
        let delta = (-30f64).exp2();
        let s = 0.5 + delta;
        let exact = 0.5 * (delta + delta * delta).sqrt();
        let area = triangle_area(1.0, s, s);
        assert!((area - exact).abs() / exact < 1e-12);
    }

    #[test]
    fn degenerate_triangles_are_rejected() {
        assert!(!is_valid_triangle(1.0, 1.0, 2.0, 1e-12));
        assert!(!is_valid_triangle(0.0, 1.0, 1.0, 1e-12));
        assert!(is_valid_triangle(1.0, 1.0, 1.999, 1e-12));
    }

    #[test]
    fn ray_hits_segment_midpoint() {
        let mu = ray_segment_param(
            Vec2::new(0.5, -1.0),
            Vec2::new(0.0, 1.0),
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
        )
        .unwrap();
        assert!((mu - 0.5).abs() < 1e-15);
    }
}
