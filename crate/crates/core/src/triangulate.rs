//! Delaunay triangulation of planar point sets.
//!
//! Points are inserted in `(x, y)` order. Each new point is the
//! lexicographic maximum so far and therefore lies outside the current hull;
//! it is joined to every hull edge it strictly sees, and the new interior
//! edges are legalized by Lawson flips. A final sweep flips cocircular
//! quadrilaterals onto the diagonal with the lexicographically smaller
//! sorted vertex pair, which makes the output unique.
//!
//! Output vertex ids follow the sorted order of the input points.

use std::collections::HashMap;

use thiserror::Error;

use crate::complex::{build_complex, Complex, ComplexError};
use crate::geometry::{circumcircle, orient2d, orient_sign, Point};

/// Relative slack of the in-circle test, as a fraction of the squared circumradius.
pub const INCIRCLE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TriangulateError {
    #[error("triangulation needs at least 3 points, got {0}")]
    TooFewKeypoints(usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("all points are collinear")]
    CollinearInput,
    #[error("point {0} has non-finite coordinates")]
    NonFinitePoint(usize),
    #[error("degenerate triangle")]
    DegenerateTriangle,
    #[error("line {line}: expected 'x,y', got '{text}'")]
    BadCsv { line: usize, text: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// At least three distinct, finite, not-all-collinear points.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, TriangulateError> {
        if points.len() < 3 {
            return Err(TriangulateError::TooFewKeypoints(points.len()));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(TriangulateError::NonFinitePoint(i));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| points[a].lex_cmp(&points[b]));
        const DUP: f64 = 1e-12;
        for (pos, &i) in order.iter().enumerate() {
            for &j in &order[pos + 1..] {
                if points[j].x - points[i].x > DUP {
                    break;
                }
                if points[i].dist(points[j]) <= DUP {
                    return Err(TriangulateError::DuplicatePoints(i.min(j), i.max(j)));
                }
            }
        }
        let (a, b) = (points[order[0]], points[order[order.len() - 1]]);
        if points.iter().all(|&p| orient_sign(a, b, p) == 0) {
            return Err(TriangulateError::CollinearInput);
        }
        Ok(PointSet { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// The points in `(x, y)` order, i.e. in output vertex order.
    pub fn sorted(&self) -> Vec<Point> {
        let mut pts = self.points.clone();
        pts.sort_by(|a, b| a.lex_cmp(b));
        pts
    }
}

/// Parses one `x,y` pair per line; blank lines, `#` comments and an
/// `x,y` header line are skipped.
pub fn parse_points_csv(text: &str) -> Result<Vec<Point>, TriangulateError> {
    let mut out = Vec::new();
    let mut first = true;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let header = first && line.replace(' ', "").eq_ignore_ascii_case("x,y");
        first = false;
        if header {
            continue;
        }
        let bad = || TriangulateError::BadCsv {
            line: n + 1,
            text: line.to_string(),
        };
        let mut parts = line.split(',').map(str::trim);
        let x: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let y: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        if parts.next().is_some() {
            return Err(bad());
        }
        out.push(Point::new(x, y));
    }
    Ok(out)
}

/// In-circle determinant of `d` against triangle `abc`; positive when `d`
/// is inside the circumcircle of a counter-clockwise `abc`.
pub fn incircle(a: Point, b: Point, c: Point, d: Point) -> f64 {
    let (adx, ady) = (a.x - d.x, a.y - d.y);
    let (bdx, bdy) = (b.x - d.x, b.y - d.y);
    let (cdx, cdy) = (c.x - d.x, c.y - d.y);
    let alift = adx * adx + ady * ady;
    let blift = bdx * bdx + bdy * bdy;
    let clift = cdx * cdx + cdy * cdy;
    adx * (bdy * clift - blift * cdy) - ady * (bdx * clift - blift * cdx)
        + alift * (bdx * cdy - bdy * cdx)
}

/// Power of `d` with respect to the circumcircle of `tri`, divided by the
/// squared circumradius: positive inside, zero on the circle.
fn relative_power(tri: [Point; 3], d: Point) -> Option<f64> {
    let (_, r2) = circumcircle(tri)?;
    let o = orient2d(tri[0], tri[1], tri[2]);
    Some(incircle(tri[0], tri[1], tri[2], d) / o / r2)
}

/// Is `p` strictly inside the circumcircle of `tri` by more than `tol`
/// (relative to the squared circumradius)?
pub fn circumdisk_contains(tri: [Point; 3], p: Point, tol: f64) -> Result<bool, TriangulateError> {
    let power = relative_power(tri, p).ok_or(TriangulateError::DegenerateTriangle)?;
    Ok(power > tol)
}

struct Mesh<'a> {
    pts: &'a [Point],
    tris: Vec<[usize; 3]>,
    edge_owner: HashMap<(usize, usize), usize>,
}

impl Mesh<'_> {
    fn add(&mut self, t: [usize; 3]) {
        let idx = self.tris.len();
        self.tris.push(t);
        for e in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            self.edge_owner.insert(e, idx);
        }
    }

    /// Vertex opposite directed edge `(u, v)` in its owning triangle.
    fn apex(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let &ti = self.edge_owner.get(&(u, v))?;
        let t = self.tris[ti];
        let w = t.iter().copied().find(|&x| x != u && x != v)?;
        Some((ti, w))
    }

    fn should_flip(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let p = self.pts;
        let (pa, pb, pc, pd) = (p[a], p[b], p[c], p[d]);
        if orient_sign(pa, pd, pc) <= 0 || orient_sign(pd, pb, pc) <= 0 {
            return false;
        }
        let Some(power) = relative_power([pa, pb, pc], pd) else {
            return true;
        };
        if power > INCIRCLE_TOL {
            return true;
        }
        if power < -INCIRCLE_TOL {
            return false;
        }
        let cur = (a.min(b), a.max(b));
        let alt = (c.min(d), c.max(d));
        alt < cur
    }

    /// Flips edge `(a, b)` if needed; returns the edges to recheck.
    fn try_flip(&mut self, a: usize, b: usize) -> Option<[(usize, usize); 4]> {
        let (t1, c) = self.apex(a, b)?;
        let (t2, d) = self.apex(b, a)?;
        if !self.should_flip(a, b, c, d) {
            return None;
        }
        self.edge_owner.remove(&(a, b));
        self.edge_owner.remove(&(b, a));
        self.tris[t1] = [a, d, c];
        self.tris[t2] = [d, b, c];
        self.edge_owner.insert((a, d), t1);
        self.edge_owner.insert((d, c), t1);
        self.edge_owner.insert((c, a), t1);
        self.edge_owner.insert((d, b), t2);
        self.edge_owner.insert((b, c), t2);
        self.edge_owner.insert((c, d), t2);
        Some([(a, d), (d, b), (b, c), (c, a)])
    }

    fn legalize(&mut self, mut stack: Vec<(usize, usize)>, budget: &mut usize) {
        while let Some((u, v)) = stack.pop() {
            if *budget == 0 {
                return;
            }
            if let Some(next) = self.try_flip(u, v) {
                *budget -= 1;
                stack.extend(next);
            }
        }
    }
}

/// Delaunay triangulation of `ps`; see the module docs for ordering and ties.
pub fn delaunay(ps: &PointSet) -> Result<Complex, TriangulateError> {
    let pts = ps.sorted();
    let n = pts.len();
    let k = (2..n)
        .find(|&i| orient_sign(pts[0], pts[1], pts[i]) != 0)
        .ok_or(TriangulateError::CollinearInput)?;
    let mut mesh = Mesh {
        pts: &pts,
        tris: Vec::new(),
        edge_owner: HashMap::new(),
    };
    let left = orient_sign(pts[0], pts[k - 1], pts[k]) > 0;
    for i in 0..k - 1 {
        if left {
            mesh.add([i, i + 1, k]);
        } else {
            mesh.add([i + 1, i, k]);
        }
    }
    // Counter-clockwise hull.
    let mut hull: Vec<usize> = if left {
        (0..=k).collect()
    } else {
        std::iter::once(0)
            .chain(std::iter::once(k))
            .chain((1..k).rev())
            .collect()
    };

    let mut budget = 64 * n * n + 1024;
    for p in k + 1..n {
        let h = hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|j| orient_sign(pts[hull[j]], pts[hull[(j + 1) % h]], pts[p]) < 0)
            .collect();
        let start = (0..h)
            .find(|&j| visible[j] && !visible[(j + h - 1) % h])
            .expect("a new extreme point sees some hull edge");
        let mut stack = Vec::new();
        let mut j = start;
        let mut count = 0;
        while visible[j] && count < h {
            let (a, b) = (hull[j], hull[(j + 1) % h]);
            mesh.add([b, a, p]);
            stack.push((a, b));
            j = (j + 1) % h;
            count += 1;
        }
        // hull[start+1 ..= start+count-1] are no longer on the hull.
        let mut next = Vec::with_capacity(h + 1);
        for step in 0..h {
            let idx = (start + step) % h;
            if step == 0 {
                next.push(hull[idx]);
                next.push(p);
            } else if step >= count {
                next.push(hull[idx]);
            }
        }
        hull = next;
        mesh.legalize(stack, &mut budget);
    }

    // Sweep until every interior edge is locally Delaunay under the tie rule.
    loop {
        let mut edges: Vec<(usize, usize)> = mesh
            .edge_owner
            .keys()
            .copied()
            .filter(|&(u, v)| u < v)
            .collect();
        edges.sort_unstable();
        let mut flipped = false;
        for (u, v) in edges {
            if budget == 0 {
                break;
            }
            if mesh.edge_owner.contains_key(&(u, v)) {
                if let Some(next) = mesh.try_flip(u, v) {
                    budget -= 1;
                    flipped = true;
                    mesh.legalize(next.to_vec(), &mut budget);
                }
            }
        }
        if !flipped || budget == 0 {
            break;
        }
    }

    Ok(build_complex(pts.clone(), &mesh.tris)?)
}
