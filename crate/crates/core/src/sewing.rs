//! Sewing: joining two points of a triangulated complex by a chain of
//! overlapping triangle windows, and closing several such chains into a cycle.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::chains::{adjacency_graph, AdjGraph, ChainError, ChainFamily, ChainReport};
use crate::complex::{CellId, CellKind, Complex};
use crate::geometry::Point;
use crate::region::{CellRegion, Region};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SewError {
    #[error("complex has no triangles")]
    NoTriangles,
    #[error("point ({}, {}) lies outside the complex", .0.x, .0.y)]
    PointOutsideComplex(Point),
    #[error("point ({}, {}) lies on an edge or vertex; perturb it into a triangle", .0.x, .0.y)]
    PointOnSkeleton(Point),
    #[error("no path of edge-adjacent triangles joins the two points")]
    Disconnected,
    #[error("a cycle needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all cycle points fall in one triangle")]
    DegenerateCycle,
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// Triangles joined when they share an edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub nodes: Vec<CellId>,
    pub adjacency: BTreeMap<CellId, Vec<CellId>>,
}

impl DualGraph {
    pub fn edges(&self) -> Vec<(CellId, CellId)> {
        self.adjacency
            .iter()
            .flat_map(|(&a, ns)| ns.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect()
    }

    pub fn neighbours(&self, t: CellId) -> &[CellId] {
        self.adjacency.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    fn distances_from(&self, source: CellId) -> BTreeMap<CellId, usize> {
        let mut dist = BTreeMap::from([(source, 0)]);
        let mut queue = VecDeque::from([source]);
        while let Some(t) = queue.pop_front() {
            let d = dist[&t];
            for &n in self.neighbours(t) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(n) {
                    e.insert(d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }

    /// Shortest path from `from` to `to`; among shortest paths, the
    /// lexicographically smallest id sequence.
    pub fn shortest_path(&self, from: CellId, to: CellId) -> Option<Vec<CellId>> {
        let to_target = self.distances_from(to);
        let mut d = *to_target.get(&from)?;
        let mut path = vec![from];
        let mut cur = from;
        while d > 0 {
            cur = *self
                .neighbours(cur)
                .iter()
                .find(|n| to_target.get(n) == Some(&(d - 1)))
                .expect("BFS layers are consistent");
            path.push(cur);
            d -= 1;
        }
        Some(path)
    }
}

pub fn dual_graph(k: &Complex) -> Result<DualGraph, SewError> {
    let nodes: Vec<CellId> = k.triangle_ids().collect();
    if nodes.is_empty() {
        return Err(SewError::NoTriangles);
    }
    let mut adjacency: BTreeMap<CellId, Vec<CellId>> =
        nodes.iter().map(|&t| (t, Vec::new())).collect();
    for e in k.edge_ids() {
        let tris: Vec<CellId> = k
            .cofaces(e)
            .iter()
            .copied()
            .filter(|&c| k.kind(c) == CellKind::Triangle)
            .collect();
        for (i, &a) in tris.iter().enumerate() {
            for &b in &tris[i + 1..] {
                adjacency.get_mut(&a).unwrap().push(b);
                adjacency.get_mut(&b).unwrap().push(a);
            }
        }
    }
    for ns in adjacency.values_mut() {
        ns.sort_unstable();
        ns.dedup();
    }
    Ok(DualGraph { nodes, adjacency })
}

/// A chain of width-two windows along a shortest dual path.
#[derive(Debug, Clone, PartialEq)]
pub struct SewChain<'k> {
    pub x: Point,
    pub y: Point,
    pub dual_path: Vec<CellId>,
    pub windows: Vec<CellRegion<'k>>,
}

impl<'k> SewChain<'k> {
    /// Number of windows.
    pub fn degree(&self) -> usize {
        self.windows.len()
    }

    pub fn family(&self) -> Result<ChainFamily<'k>, ChainError> {
        ChainFamily::new(self.windows.iter().cloned().map(Region::from).collect())
    }

    /// Chain report; a single window is vacuously a chain.
    pub fn report(&self) -> ChainReport {
        match self.family() {
            Ok(f) => crate::chains::classify(&f),
            Err(_) => ChainReport {
                is_chain: true,
                is_link: true,
                violations: Vec::new(),
            },
        }
    }

    pub fn to_json(&self) -> SewJson {
        SewJson {
            dual_path: self.dual_path.clone(),
            windows: self
                .windows
                .iter()
                .map(|w| w.cells().iter().copied().collect())
                .collect(),
            degree: self.degree(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SewJson {
    pub dual_path: Vec<CellId>,
    pub windows: Vec<Vec<CellId>>,
    pub degree: usize,
}

fn locate_triangle(k: &Complex, p: Point) -> Result<CellId, SewError> {
    match k.point_locate(p) {
        None => Err(SewError::PointOutsideComplex(p)),
        Some(c) if k.kind(c) == CellKind::Triangle => Ok(c),
        Some(_) => Err(SewError::PointOnSkeleton(p)),
    }
}

fn sew_with<'k>(
    k: &'k Complex,
    dual: &DualGraph,
    x: Point,
    y: Point,
) -> Result<SewChain<'k>, SewError> {
    let tx = locate_triangle(k, x)?;
    let ty = locate_triangle(k, y)?;
    let path = dual.shortest_path(tx, ty).ok_or(SewError::Disconnected)?;
    let windows = if path.len() == 1 {
        vec![CellRegion::new(k, [tx]).expect("valid triangle")]
    } else {
        path.windows(2)
            .map(|w| CellRegion::new(k, [w[0], w[1]]).expect("valid triangles"))
            .collect()
    };
    Ok(SewChain {
        x,
        y,
        dual_path: path,
        windows,
    })
}

/// Joins the triangles containing `x` and `y` by consecutive two-triangle
/// windows along a shortest dual path. Neighbouring windows share one
/// triangle; windows further apart share none.
pub fn sew(k: &Complex, x: Point, y: Point) -> Result<SewChain<'_>, SewError> {
    sew_with(k, &dual_graph(k)?, x, y)
}

/// Concatenated sewing chains `v_1 -> v_2 -> … -> v_n -> v_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleChain<'k> {
    pub family: ChainFamily<'k>,
    /// Window indices of each sewing segment, in order.
    pub segments: Vec<Vec<usize>>,
}

impl CycleChain<'_> {
    /// Union of the per-segment adjacency graphs on the cycle's indices.
    pub fn segment_chain_graph(&self) -> AdjGraph {
        let nodes: Vec<usize> = (0..self.family.len()).collect();
        let mut g = AdjGraph::new(nodes, []);
        for seg in &self.segments {
            if seg.len() < 2 {
                continue;
            }
            let sub = ChainFamily::new(
                seg.iter()
                    .map(|&i| self.family.members()[i].clone())
                    .collect(),
            )
            .expect("segment windows share the complex");
            let local = adjacency_graph(&sub);
            g = g.union(&AdjGraph::new(
                Vec::new(),
                local.edges.iter().map(|&(a, b)| (seg[a], seg[b])),
            ));
        }
        g
    }
}

pub fn cycle_through<'k>(k: &'k Complex, points: &[Point]) -> Result<CycleChain<'k>, SewError> {
    if points.len() < 3 {
        return Err(SewError::TooFewPoints(points.len()));
    }
    let dual = dual_graph(k)?;
    let mut windows: Vec<CellRegion<'k>> = Vec::new();
    let mut segments = Vec::new();
    for i in 0..points.len() {
        let chain = sew_with(k, &dual, points[i], points[(i + 1) % points.len()])?;
        let mut seg = Vec::new();
        for w in chain.windows {
            if windows.last() == Some(&w) {
                seg.push(windows.len() - 1);
            } else {
                windows.push(w);
                seg.push(windows.len() - 1);
            }
        }
        segments.push(seg);
    }
    if windows.len() > 1 && windows.first() == windows.last() {
        let last = windows.len() - 1;
        windows.pop();
        for seg in &mut segments {
            for i in seg.iter_mut() {
                if *i == last {
                    *i = 0;
                }
            }
        }
    }
    if windows.len() < 2 {
        return Err(SewError::DegenerateCycle);
    }
    let family = ChainFamily::new(windows.into_iter().map(Region::from).collect())?;
    Ok(CycleChain { family, segments })
}
