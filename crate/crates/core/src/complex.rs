//! Finite planar cell complexes built from vertices, edges and filled triangles.
//!
//! Cell ids are deterministic: all vertices first (cell id == vertex index),
//! then edges in lexicographic vertex order, then triangles in lexicographic
//! vertex order.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    orient_sign, point_in_triangle, point_on_segment, segments_intersect, Point,
};

pub type CellId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    Plane,
    Segment,
    Circle,
}

impl std::fmt::Display for Ambient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ambient::Plane => "plane",
            Ambient::Segment => "segment",
            Ambient::Circle => "circle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Vertex,
    Edge,
    Triangle,
}

impl CellKind {
    pub fn dim(self) -> usize {
        match self {
            CellKind::Vertex => 0,
            CellKind::Edge => 1,
            CellKind::Triangle => 2,
        }
    }

    fn from_len(len: usize) -> Option<Self> {
        match len {
            1 => Some(CellKind::Vertex),
            2 => Some(CellKind::Edge),
            3 => Some(CellKind::Triangle),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub kind: CellKind,
    /// Strictly increasing vertex indices.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("vertex {0} has non-finite coordinates")]
    NonFinitePoint(usize),
    #[error("vertex index {index} out of range ({count} vertices)")]
    VertexOutOfRange { index: usize, count: usize },
    #[error("degenerate triangle {0:?}")]
    DegenerateTriangle([usize; 3]),
    #[error("duplicate cell {0:?}")]
    DuplicateCell(Vec<usize>),
    #[error("cells {0:?} and {1:?} intersect outside a shared face")]
    ImproperIntersection(Vec<usize>, Vec<usize>),
    #[error("unsupported ambient '{0}' for a cell complex")]
    UnsupportedAmbient(String),
    #[error("malformed cell with {0} vertices")]
    MalformedCell(usize),
}

/// An immutable finite cell complex in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Complex {
    points: Vec<Point>,
    cells: Vec<Cell>,
    lookup: BTreeMap<Vec<usize>, CellId>,
    faces: Vec<Vec<CellId>>,
    cofaces: Vec<Vec<CellId>>,
    missing_faces: Vec<(CellId, Vec<usize>)>,
}

/// Audit of the closure-finite / weak-topology conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CwReport {
    /// Indexed by cell id: how many cells meet the closure of that cell.
    pub closure_finite_counts: Vec<usize>,
    pub weak_topology_ok: bool,
    pub missing_faces: Vec<(CellId, Vec<usize>)>,
    pub planarity_violations: Vec<(CellId, CellId)>,
    pub verdict: bool,
}

/// On-disk form: edges are derived and never serialized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ambient: Ambient,
    pub vertices: Vec<[f64; 2]>,
    pub triangles: Vec<[usize; 3]>,
}

/// Builds a complex from vertex coordinates and triangle vertex triples,
/// deriving every edge and rejecting degenerate or overlapping input.
pub fn build_complex(
    points: Vec<Point>,
    triangles: &[[usize; 3]],
) -> Result<Complex, ComplexError> {
    let k = Complex::assemble(points, triangles)?;
    for t in k.triangle_ids() {
        let [a, b, c] = k.triangle_points(t);
        if orient_sign(a, b, c) == 0 {
            let v = &k.cells[t].vertices;
            return Err(ComplexError::DegenerateTriangle([v[0], v[1], v[2]]));
        }
    }
    if let Some(&(a, b)) = k.planarity_violations().first() {
        return Err(ComplexError::ImproperIntersection(
            k.cells[a].vertices.clone(),
            k.cells[b].vertices.clone(),
        ));
    }
    Ok(k)
}

impl Complex {
    /// Derives edges and ids without any geometric checks.
    pub fn assemble(points: Vec<Point>, triangles: &[[usize; 3]]) -> Result<Complex, ComplexError> {
        let mut raw: Vec<Vec<usize>> = Vec::new();
        let mut seen = BTreeSet::new();
        for t in triangles {
            let mut v = t.to_vec();
            v.sort_unstable();
            if v[0] == v[1] || v[1] == v[2] {
                return Err(ComplexError::DegenerateTriangle(*t));
            }
            if !seen.insert(v.clone()) {
                return Err(ComplexError::DuplicateCell(v));
            }
            raw.push(vec![v[0], v[1]]);
            raw.push(vec![v[0], v[2]]);
            raw.push(vec![v[1], v[2]]);
            raw.push(v);
        }
        raw.sort();
        raw.dedup();
        Complex::from_cells_unchecked(points, raw)
    }

    /// Builds a complex from an explicit list of edges and triangles. Faces are
    /// not derived: any that are missing are recorded and surface in
    /// [`validate_cw`]. Every vertex is always present as a 0-cell.
    pub fn from_cells_unchecked(
        points: Vec<Point>,
        cells: Vec<Vec<usize>>,
    ) -> Result<Complex, ComplexError> {
        if points.is_empty() {
            return Err(ComplexError::EmptyComplex);
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(ComplexError::NonFinitePoint(i));
        }
        let n = points.len();
        let mut higher: Vec<Vec<usize>> = Vec::new();
        for c in cells {
            let mut c = c;
            c.sort_unstable();
            if !(2..=3).contains(&c.len()) {
                return Err(ComplexError::MalformedCell(c.len()));
            }
            if let Some(&index) = c.iter().find(|&&i| i >= n) {
                return Err(ComplexError::VertexOutOfRange { index, count: n });
            }
            if c.windows(2).any(|w| w[0] == w[1]) {
                return Err(ComplexError::MalformedCell(c.len()));
            }
            higher.push(c);
        }
        // Edges before triangles, each lexicographic.
        higher.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some(w) = higher.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateCell(w[0].clone()));
        }

        let mut cells: Vec<Cell> = (0..n)
            .map(|v| Cell {
                kind: CellKind::Vertex,
                vertices: vec![v],
            })
            .collect();
        for c in higher {
            let kind = CellKind::from_len(c.len()).expect("checked above");
            cells.push(Cell { kind, vertices: c });
        }
        let lookup: BTreeMap<Vec<usize>, CellId> = cells
            .iter()
            .enumerate()
            .map(|(id, c)| (c.vertices.clone(), id))
            .collect();

        let mut faces = vec![Vec::new(); cells.len()];
        let mut cofaces = vec![Vec::new(); cells.len()];
        let mut missing_faces = Vec::new();
        for (id, cell) in cells.iter().enumerate() {
            for face in proper_faces(&cell.vertices) {
                match lookup.get(&face) {
                    Some(&f) => {
                        faces[id].push(f);
                        cofaces[f].push(id);
                    }
                    None => missing_faces.push((id, face)),
                }
            }
            faces[id].sort_unstable();
        }
        for c in &mut cofaces {
            c.sort_unstable();
        }
        Ok(Complex {
            points,
            cells,
            lookup,
            faces,
            cofaces,
            missing_faces,
        })
    }

    pub fn from_json(json: &ComplexJson) -> Result<Complex, ComplexError> {
        if json.ambient != Ambient::Plane {
            return Err(ComplexError::UnsupportedAmbient(json.ambient.to_string()));
        }
        build_complex(
            json.vertices.iter().map(|&p| p.into()).collect(),
            &json.triangles,
        )
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ambient: Ambient::Plane,
            vertices: self.points.iter().map(|&p| p.into()).collect(),
            triangles: self
                .triangle_ids()
                .map(|t| {
                    let v = &self.cells[t].vertices;
                    [v[0], v[1], v[2]]
                })
                .collect(),
        }
    }

    pub fn ambient(&self) -> Ambient {
        Ambient::Plane
    }

    pub fn num_vertices(&self) -> usize {
        self.points.len()
    }

    pub fn num_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, v: usize) -> Point {
        self.points[v]
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn kind(&self, id: CellId) -> CellKind {
        self.cells[id].kind
    }

    pub fn contains_cell(&self, id: CellId) -> bool {
        id < self.cells.len()
    }

    /// All proper faces present in the complex, sorted by id.
    pub fn faces(&self, id: CellId) -> &[CellId] {
        &self.faces[id]
    }

    /// Cells having `id` as a proper face, sorted by id.
    pub fn cofaces(&self, id: CellId) -> &[CellId] {
        &self.cofaces[id]
    }

    pub fn cell_id(&self, vertices: &[usize]) -> Option<CellId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.lookup.get(&v).copied()
    }

    pub fn ids_of_kind(&self, kind: CellKind) -> impl Iterator<Item = CellId> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(move |(_, c)| c.kind == kind)
            .map(|(i, _)| i)
    }

    pub fn triangle_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.ids_of_kind(CellKind::Triangle)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = CellId> + '_ {
        self.ids_of_kind(CellKind::Edge)
    }

    pub fn num_triangles(&self) -> usize {
        self.triangle_ids().count()
    }

    /// Triangles incident to vertex `v`, sorted by id.
    pub fn vertex_star_triangles(&self, v: usize) -> Vec<CellId> {
        self.cofaces(v)
            .iter()
            .copied()
            .filter(|&c| self.kind(c) == CellKind::Triangle)
            .collect()
    }

    pub fn cell_points(&self, id: CellId) -> Vec<Point> {
        self.cells[id]
            .vertices
            .iter()
            .map(|&v| self.points[v])
            .collect()
    }

    pub fn triangle_points(&self, id: CellId) -> [Point; 3] {
        let v = &self.cells[id].vertices;
        assert_eq!(v.len(), 3, "cell {id} is not a triangle");
        [self.points[v[0]], self.points[v[1]], self.points[v[2]]]
    }

    /// Closure of a set of cells: the cells plus all their faces.
    pub fn closure_of(&self, cells: &BTreeSet<CellId>) -> BTreeSet<CellId> {
        let mut out = cells.clone();
        for &c in cells {
            out.extend(self.faces[c].iter().copied());
        }
        out
    }

    /// Cells whose closed carrier contains `p`: lowest dimension wins, ties
    /// go to the smallest id.
    pub fn point_locate(&self, p: Point) -> Option<CellId> {
        let scale = self.extent().max(f64::MIN_POSITIVE);
        let tol = 1e-12 * scale;
        for kind in [CellKind::Vertex, CellKind::Edge, CellKind::Triangle] {
            let hit = self.ids_of_kind(kind).find(|&id| {
                let pts = self.cell_points(id);
                match kind {
                    CellKind::Vertex => pts[0].dist(p) <= tol,
                    CellKind::Edge => point_on_segment(p, pts[0], pts[1]),
                    CellKind::Triangle => point_in_triangle(p, [pts[0], pts[1], pts[2]]),
                }
            });
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Bounding box as (min, max).
    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = self.points[0];
        let mut hi = self.points[0];
        for p in &self.points {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    fn extent(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi.x - lo.x).max(hi.y - lo.y)
    }

    /// Whether the closed carriers of two cells intersect.
    pub fn carriers_meet(&self, a: CellId, b: CellId) -> bool {
        let pa = self.cell_points(a);
        let pb = self.cell_points(b);
        if !boxes_overlap(&pa, &pb) {
            return false;
        }
        closed_simplices_meet(&pa, &pb)
    }

    /// Maximal-cell pairs whose intersection is not their common closed face.
    pub fn planarity_violations(&self) -> Vec<(CellId, CellId)> {
        let maximal: Vec<CellId> = (0..self.cells.len())
            .filter(|&c| self.cofaces[c].is_empty())
            .collect();
        let mut out = Vec::new();
        for (i, &a) in maximal.iter().enumerate() {
            for &b in &maximal[i + 1..] {
                if !self.pair_is_proper(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn pair_is_proper(&self, a: CellId, b: CellId) -> bool {
        let va = &self.cells[a].vertices;
        let vb = &self.cells[b].vertices;
        let pa = self.cell_points(a);
        let pb = self.cell_points(b);
        if !boxes_overlap(&pa, &pb) {
            return true;
        }
        let shared: Vec<usize> = va.iter().copied().filter(|v| vb.contains(v)).collect();
        if shared.len() == va.len() || shared.len() == vb.len() {
            // One is a face of the other (or they coincide combinatorially).
            return true;
        }
        match shared.len() {
            0 => !closed_simplices_meet(&pa, &pb),
            1 => {
                let apex = self.points[shared[0]];
                let rays_a: Vec<Point> = va
                    .iter()
                    .filter(|&&v| v != shared[0])
                    .map(|&v| self.points[v])
                    .collect();
                let rays_b: Vec<Point> = vb
                    .iter()
                    .filter(|&&v| v != shared[0])
                    .map(|&v| self.points[v])
                    .collect();
                !cones_overlap(apex, &rays_a, &rays_b)
            }
            _ => {
                // Two triangles sharing an edge: opposite vertices must lie
                // strictly on opposite sides of the edge line.
                let (s0, s1) = (self.points[shared[0]], self.points[shared[1]]);
                let oa = va
                    .iter()
                    .find(|v| !shared.contains(v))
                    .map(|&v| self.points[v]);
                let ob = vb
                    .iter()
                    .find(|v| !shared.contains(v))
                    .map(|&v| self.points[v]);
                match (oa, ob) {
                    (Some(oa), Some(ob)) => orient_sign(s0, s1, oa) * orient_sign(s0, s1, ob) < 0,
                    _ => true,
                }
            }
        }
    }
}

/// Validates the closure-finite / weak-topology conditions of a finite complex.
pub fn validate_cw(k: &Complex) -> CwReport {
    let n = k.num_cells();
    let mut counts = vec![0usize; n];
    for a in 0..n {
        for b in a..n {
            if k.carriers_meet(a, b) {
                counts[a] += 1;
                if a != b {
                    counts[b] += 1;
                }
            }
        }
    }
    let planarity_violations = k.planarity_violations();
    let weak_topology_ok = k.missing_faces.is_empty() && planarity_violations.is_empty();
    CwReport {
        closure_finite_counts: counts,
        weak_topology_ok,
        missing_faces: k.missing_faces.clone(),
        verdict: weak_topology_ok && planarity_violations.is_empty(),
        planarity_violations,
    }
}

fn proper_faces(v: &[usize]) -> Vec<Vec<usize>> {
    match v.len() {
        2 => vec![vec![v[0]], vec![v[1]]],
        3 => vec![
            vec![v[0]],
            vec![v[1]],
            vec![v[2]],
            vec![v[0], v[1]],
            vec![v[0], v[2]],
            vec![v[1], v[2]],
        ],
        _ => Vec::new(),
    }
}

fn boxes_overlap(a: &[Point], b: &[Point]) -> bool {
    let bb = |pts: &[Point]| {
        pts.iter().fold(
            (
                f64::INFINITY,
                f64::INFINITY,
                f64::NEG_INFINITY,
                f64::NEG_INFINITY,
            ),
            |(x0, y0, x1, y1), p| (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
        )
    };
    let (ax0, ay0, ax1, ay1) = bb(a);
    let (bx0, by0, bx1, by1) = bb(b);
    let pad = 1e-9
        * (ax1 - ax0)
            .max(ay1 - ay0)
            .max(bx1 - bx0)
            .max(by1 - by0)
            .max(1e-300);
    ax0 <= bx1 + pad && bx0 <= ax1 + pad && ay0 <= by1 + pad && by0 <= ay1 + pad
}

/// Closed intersection of two simplices of dimension at most 2.
fn closed_simplices_meet(a: &[Point], b: &[Point]) -> bool {
    let contains = |s: &[Point], p: Point| match s.len() {
        1 => s[0].dist(p) <= 1e-12 * (1.0 + s[0].x.abs().max(s[0].y.abs())),
        2 => point_on_segment(p, s[0], s[1]),
        _ => point_in_triangle(p, [s[0], s[1], s[2]]),
    };
    if a.iter().any(|&p| contains(b, p)) || b.iter().any(|&p| contains(a, p)) {
        return true;
    }
    let segs = |s: &[Point]| -> Vec<(Point, Point)> {
        match s.len() {
            2 => vec![(s[0], s[1])],
            3 => vec![(s[0], s[1]), (s[1], s[2]), (s[2], s[0])],
            _ => Vec::new(),
        }
    };
    let sa = segs(a);
    let sb = segs(b);
    sa.iter()
        .any(|&(p, q)| sb.iter().any(|&(r, s)| segments_intersect(p, q, r, s)))
}

/// Do the closed cones spanned at `apex` by the two ray sets share a
/// direction? Each set has one or two rays spanning less than a half-turn.
fn cones_overlap(apex: Point, a: &[Point], b: &[Point]) -> bool {
    let in_cone = |cone: &[Point], r: Point| -> bool {
        match cone.len() {
            1 => {
                let u = cone[0] - apex;
                let w = r - apex;
                orient_sign(apex, cone[0], r) == 0 && u.x * w.x + u.y * w.y > 0.0
            }
            _ => {
                let (mut u, mut w) = (cone[0], cone[1]);
                if orient_sign(apex, u, w) < 0 {
                    std::mem::swap(&mut u, &mut w);
                }
                let same_dir = |d: Point| {
                    let (p, q) = (d - apex, r - apex);
                    orient_sign(apex, d, r) == 0 && p.x * q.x + p.y * q.y > 0.0
                };
                same_dir(u)
                    || same_dir(w)
                    || (orient_sign(apex, u, r) > 0 && orient_sign(apex, r, w) > 0)
            }
        }
    };
    a.iter().any(|&r| in_cone(b, r)) || b.iter().any(|&r| in_cone(a, r))
}

impl std::str::FromStr for ComplexJson {
    type Err = serde_json::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn hex_fan_cell_counts() {
        let k = fixtures::hex_fan();
        assert_eq!(k.num_vertices(), 7);
        assert_eq!(k.edge_ids().count(), 12);
        assert_eq!(k.num_triangles(), 6);
        assert_eq!(k.num_cells(), 25);
    }

    #[test]
    fn single_triangle() {
        let k = build_complex(
            vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)],
            &[[0, 1, 2]],
        )
        .unwrap();
        assert_eq!(k.num_cells(), 7);
        assert_eq!(k.faces(6), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn ids_are_lexicographic() {
        let k = fixtures::hex_fan();
        let edges: Vec<Vec<usize>> = k.edge_ids().map(|e| k.cell(e).vertices.clone()).collect();
        let mut sorted = edges.clone();
        sorted.sort();
        assert_eq!(edges, sorted);
        assert_eq!(k.cell_id(&[2, 0, 1]), Some(19));
    }

    #[test]
    fn rejects_degenerate_and_duplicate() {
        let pts = vec![
            Point::new(0., 0.),
            Point::new(1., 1.),
            Point::new(2., 2.),
            Point::new(0., 1.),
        ];
        assert!(matches!(
            build_complex(pts.clone(), &[[0, 1, 2]]),
            Err(ComplexError::DegenerateTriangle(_))
        ));
        assert!(matches!(
            build_complex(pts.clone(), &[[0, 1, 3], [3, 1, 0]]),
            Err(ComplexError::DuplicateCell(_))
        ));
        assert!(matches!(
            build_complex(pts, &[[0, 1, 7]]),
            Err(ComplexError::VertexOutOfRange { index: 7, .. })
        ));
    }

    #[test]
    fn overlapping_triangles_rejected() {
        let pts = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(0., 2.),
            Point::new(0.5, 0.5),
            Point::new(3., 0.5),
            Point::new(0.5, 3.),
        ];
        assert!(matches!(
            build_complex(pts, &[[0, 1, 2], [3, 4, 5]]),
            Err(ComplexError::ImproperIntersection(_, _))
        ));
    }

    #[test]
    fn shared_vertex_overlap_detected() {
        // Both triangles hang off vertex 0 and overlap in a wedge.
        let pts = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(0., 2.),
            Point::new(2., 1.),
            Point::new(1., 2.),
        ];
        assert!(build_complex(pts.clone(), &[[0, 1, 2], [0, 3, 4]]).is_err());
        // Opposite wedge is fine.
        let pts2 = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(0., 2.),
            Point::new(-2., 0.),
            Point::new(0., -2.),
        ];
        assert!(build_complex(pts2, &[[0, 1, 2], [0, 3, 4]]).is_ok());
    }

    #[test]
    fn same_side_edge_neighbours_rejected() {
        let pts = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(1., 2.),
            Point::new(1., 1.),
        ];
        assert!(build_complex(pts, &[[0, 1, 2], [0, 1, 3]]).is_err());
    }

    #[test]
    fn point_location() {
        let k = fixtures::hex_fan();
        let t = k.cell_id(&[0, 1, 2]).unwrap();
        let c = crate::geometry::centroid(k.triangle_points(t));
        assert_eq!(k.point_locate(c), Some(t));
        assert_eq!(k.point_locate(k.point(0)), Some(0));
        assert_eq!(k.point_locate(Point::new(10., 10.)), None);
        let mid = Point::new(
            (k.point(0).x + k.point(1).x) / 2.0,
            (k.point(0).y + k.point(1).y) / 2.0,
        );
        assert_eq!(k.point_locate(mid), k.cell_id(&[0, 1]));
    }

    #[test]
    fn json_round_trip() {
        let k = fixtures::hex_fan();
        let json = serde_json::to_string(&k.to_json()).unwrap();
        let back: ComplexJson = json.parse().unwrap();
        assert_eq!(Complex::from_json(&back).unwrap(), k);
        let bad = ComplexJson {
            ambient: Ambient::Circle,
            ..k.to_json()
        };
        assert!(matches!(
            Complex::from_json(&bad),
            Err(ComplexError::UnsupportedAmbient(_))
        ));
    }

    #[test]
    fn validate_reports_missing_edge() {
        let pts = vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)];
        let k = Complex::from_cells_unchecked(pts, vec![vec![0, 1], vec![1, 2], vec![0, 1, 2]])
            .unwrap();
        let r = validate_cw(&k);
        assert!(!r.verdict);
        assert!(!r.weak_topology_ok);
        assert_eq!(r.missing_faces, vec![(5, vec![0, 2])]);
    }

    #[test]
    fn validate_reports_single_overlap() {
        let pts = vec![
            Point::new(0., 0.),
            Point::new(2., 0.),
            Point::new(0., 2.),
            Point::new(0.5, 0.5),
            Point::new(3., 0.5),
            Point::new(0.5, 3.),
        ];
        let k = Complex::assemble(pts, &[[0, 1, 2], [3, 4, 5]]).unwrap();
        let r = validate_cw(&k);
        assert!(!r.verdict);
        assert_eq!(r.planarity_violations.len(), 1);
    }
}
