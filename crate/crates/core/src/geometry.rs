//! Planar points and the floating-point predicates used throughout the crate.

use serde::{Deserialize, Serialize};

/// Absolute tolerance applied to normalized orientation tests.
pub const ORIENT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl std::ops::Sub for Point {
    type Output = Point;

    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn dist2(self, o: Point) -> f64 {
        let d = self - o;
        d.x * d.x + d.y * d.y
    }

    /// Lexicographic (x, y) comparison; NaN-free inputs assumed.
    pub fn lex_cmp(&self, o: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&o.x).then_with(|| self.y.total_cmp(&o.y))
    }
}

/// A point of some ambient space: the plane, or the unit segment / circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmbientPoint {
    Plane(Point),
    Line(f64),
}

/// Twice the signed area of `abc`; positive for counter-clockwise order.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Sign of `orient2d` with a tolerance scaled by the squared extent of the inputs.
pub fn orient_sign(a: Point, b: Point, c: Point) -> i8 {
    let o = orient2d(a, b, c);
    let scale = a.dist2(b).max(a.dist2(c)).max(b.dist2(c));
    if o.abs() <= ORIENT_EPS * scale.max(f64::MIN_POSITIVE) {
        0
    } else if o > 0.0 {
        1
    } else {
        -1
    }
}

pub fn centroid(tri: [Point; 3]) -> Point {
    Point::new(
        (tri[0].x + tri[1].x + tri[2].x) / 3.0,
        (tri[0].y + tri[1].y + tri[2].y) / 3.0,
    )
}

pub fn triangle_area(tri: [Point; 3]) -> f64 {
    orient2d(tri[0], tri[1], tri[2]).abs() / 2.0
}

pub fn triangle_perimeter(tri: [Point; 3]) -> f64 {
    tri[0].dist(tri[1]) + tri[1].dist(tri[2]) + tri[2].dist(tri[0])
}

/// Closed containment of `p` in triangle `tri` (either orientation).
pub fn point_in_triangle(p: Point, tri: [Point; 3]) -> bool {
    let s = [
        orient_sign(tri[0], tri[1], p),
        orient_sign(tri[1], tri[2], p),
        orient_sign(tri[2], tri[0], p),
    ];
    let has_pos = s.iter().any(|&v| v > 0);
    let has_neg = s.iter().any(|&v| v < 0);
    !(has_pos && has_neg)
}

/// Strict interior containment of `p` in triangle `tri`.
pub fn point_strictly_in_triangle(p: Point, tri: [Point; 3]) -> bool {
    let s = [
        orient_sign(tri[0], tri[1], p),
        orient_sign(tri[1], tri[2], p),
        orient_sign(tri[2], tri[0], p),
    ];
    s.iter().all(|&v| v > 0) || s.iter().all(|&v| v < 0)
}

/// Whether `p` lies on the closed segment `ab`.
pub fn point_on_segment(p: Point, a: Point, b: Point) -> bool {
    if orient_sign(a, b, p) != 0 {
        return false;
    }
    let tol = ORIENT_EPS.sqrt() * a.dist(b).max(f64::MIN_POSITIVE);
    p.x >= a.x.min(b.x) - tol
        && p.x <= a.x.max(b.x) + tol
        && p.y >= a.y.min(b.y) - tol
        && p.y <= a.y.max(b.y) + tol
}

/// Closed segment intersection test.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && point_on_segment(c, a, b))
        || (o2 == 0 && point_on_segment(d, a, b))
        || (o3 == 0 && point_on_segment(a, c, d))
        || (o4 == 0 && point_on_segment(b, c, d))
}

pub fn dist_point_segment(p: Point, a: Point, b: Point) -> f64 {
    let ab = b - a;
    let len2 = ab.x * ab.x + ab.y * ab.y;
    if len2 == 0.0 {
        return p.dist(a);
    }
    let ap = p - a;
    let t = ((ap.x * ab.x + ap.y * ab.y) / len2).clamp(0.0, 1.0);
    p.dist(Point::new(a.x + t * ab.x, a.y + t * ab.y))
}

/// Euclidean distance from `p` to the closed triangle (0 inside).
pub fn dist_point_triangle(p: Point, tri: [Point; 3]) -> f64 {
    if point_in_triangle(p, tri) {
        return 0.0;
    }
    dist_point_segment(p, tri[0], tri[1])
        .min(dist_point_segment(p, tri[1], tri[2]))
        .min(dist_point_segment(p, tri[2], tri[0]))
}

/// Circumcenter and squared circumradius, or `None` for a degenerate triangle.
pub fn circumcircle(tri: [Point; 3]) -> Option<(Point, f64)> {
    let [a, b, c] = tri;
    let d = 2.0 * orient2d(a, b, c);
    if orient_sign(a, b, c) == 0 {
        return None;
    }
    let b = b - a;
    let c = c - a;
    let bl = b.x * b.x + b.y * b.y;
    let cl = c.x * c.x + c.y * c.y;
    let ux = (c.y * bl - b.y * cl) / d;
    let uy = (b.x * cl - c.x * bl) / d;
    Some((Point::new(a.x + ux, a.y + uy), ux * ux + uy * uy))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        assert_eq!(orient_sign(a, b, Point::new(0.0, 1.0)), 1);
        assert_eq!(orient_sign(a, b, Point::new(0.0, -1.0)), -1);
        assert_eq!(orient_sign(a, b, Point::new(2.0, 0.0)), 0);
    }

    #[test]
    fn segment_cases() {
        let p = |x, y| Point::new(x, y);
        assert!(segments_intersect(
            p(0., 0.),
            p(2., 2.),
            p(0., 2.),
            p(2., 0.)
        ));
        assert!(segments_intersect(
            p(0., 0.),
            p(1., 0.),
            p(1., 0.),
            p(2., 5.)
        ));
        assert!(!segments_intersect(
            p(0., 0.),
            p(1., 0.),
            p(2., 0.),
            p(3., 0.)
        ));
        assert!(segments_intersect(
            p(0., 0.),
            p(2., 0.),
            p(1., 0.),
            p(3., 0.)
        ));
        assert!(!segments_intersect(
            p(0., 0.),
            p(1., 1.),
            p(0., 1.),
            p(0.4, 0.6)
        ));
    }

    #[test]
    fn circumcircle_of_right_triangle() {
        let (c, r2) =
            circumcircle([Point::new(0., 0.), Point::new(2., 0.), Point::new(0., 2.)]).unwrap();
        assert!((c.x - 1.0).abs() < 1e-12 && (c.y - 1.0).abs() < 1e-12);
        assert!((r2 - 2.0).abs() < 1e-12);
        assert!(
            circumcircle([Point::new(0., 0.), Point::new(1., 1.), Point::new(2., 2.)]).is_none()
        );
    }

    #[test]
    fn distance_to_triangle() {
        let t = [Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)];
        assert_eq!(dist_point_triangle(Point::new(0.2, 0.2), t), 0.0);
        assert!((dist_point_triangle(Point::new(0.5, -0.5), t) - 0.5).abs() < 1e-15);
    }
}
