//! Nerves, maximal nuclear clusters, spoke rings and centroidal cycles.
//!
//! Ring indexing follows the recursive definition: ring 0 is the nucleus
//! vertex, ring 1 the triangles of its nerve, and ring `j >= 2` the
//! triangles that touch ring `j - 1`, touch nothing in ring `j - 2`, and
//! belong to no earlier ring. "Touch" is Lodato nearness of closed
//! triangles, i.e. a shared vertex. Callers who number the first shell
//! around the cluster as ring 1 should pass `j + 1`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{CellId, Complex};
use crate::geometry::{centroid, Point};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("complex has no triangles")]
    NoTriangles,
    #[error("vertex {0} does not exist")]
    UnknownVertex(usize),
    #[error("vertex {0} has no incident triangle")]
    IsolatedNucleus(usize),
    #[error("ring {k} has {size} triangles; a cycle needs at least 3")]
    RingTooSmall { k: usize, size: usize },
}

/// Triangles sharing a common vertex (the nucleus).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Nerve {
    pub nucleus: usize,
    pub triangles: Vec<CellId>,
    pub order: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpokeRing {
    pub nucleus: usize,
    pub k: usize,
    pub triangles: Vec<CellId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentroidalCycle {
    pub nucleus: usize,
    pub k: usize,
    /// Ring triangles in cycle order.
    pub triangles: Vec<CellId>,
    pub points: Vec<Point>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedRing {
    pub k: usize,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Vortex {
    pub nucleus: usize,
    pub cycles: Vec<CentroidalCycle>,
    pub skipped: Vec<SkippedRing>,
}

/// One nerve per vertex with at least one incident triangle, by vertex id.
pub fn nerves(k: &Complex) -> Result<Vec<Nerve>, NerveError> {
    if k.num_triangles() == 0 {
        return Err(NerveError::NoTriangles);
    }
    Ok((0..k.num_vertices())
        .filter_map(|v| {
            let triangles = k.vertex_star_triangles(v);
            (!triangles.is_empty()).then_some(Nerve {
                nucleus: v,
                order: triangles.len(),
                triangles,
            })
        })
        .collect())
}

/// Every nerve of maximal order; ties are all returned.
pub fn mnc(k: &Complex) -> Result<Vec<Nerve>, NerveError> {
    let all = nerves(k)?;
    let best = all.iter().map(|n| n.order).max().unwrap_or(0);
    Ok(all.into_iter().filter(|n| n.order == best).collect())
}

fn shares_vertex(k: &Complex, a: CellId, b: CellId) -> bool {
    let va = &k.cell(a).vertices;
    k.cell(b).vertices.iter().any(|v| va.contains(v))
}

/// Rings `0..=max_ring` about `nucleus`; ring 0 carries no triangles.
pub fn spoke_rings(
    k: &Complex,
    nucleus: usize,
    max_ring: usize,
) -> Result<Vec<SpokeRing>, NerveError> {
    if nucleus >= k.num_vertices() {
        return Err(NerveError::UnknownVertex(nucleus));
    }
    let star = k.vertex_star_triangles(nucleus);
    if star.is_empty() {
        return Err(NerveError::IsolatedNucleus(nucleus));
    }
    let mut rings: Vec<Vec<CellId>> = vec![Vec::new()];
    let mut used: BTreeSet<CellId> = BTreeSet::new();
    for j in 1..=max_ring {
        let ring: Vec<CellId> = if j == 1 {
            star.clone()
        } else {
            let prev = &rings[j - 1];
            let before = &rings[j - 2];
            k.triangle_ids()
                .filter(|t| !used.contains(t))
                .filter(|&t| prev.iter().any(|&p| shares_vertex(k, t, p)))
                .filter(|&t| {
                    if j == 2 {
                        !k.cell(t).vertices.contains(&nucleus)
                    } else {
                        before.iter().all(|&b| !shares_vertex(k, t, b))
                    }
                })
                .collect()
        };
        used.extend(ring.iter().copied());
        rings.push(ring);
    }
    Ok(rings
        .into_iter()
        .enumerate()
        .map(|(j, triangles)| SpokeRing {
            nucleus,
            k: j,
            triangles,
        })
        .collect())
}

pub fn skcx(k: &Complex, nucleus: usize, ring: usize) -> Result<SpokeRing, NerveError> {
    Ok(spoke_rings(k, nucleus, ring)?
        .pop()
        .expect("ring 0 always present"))
}

fn cycle_from_ring(k: &Complex, ring: &SpokeRing) -> Result<CentroidalCycle, NerveError> {
    if ring.triangles.len() < 3 {
        return Err(NerveError::RingTooSmall {
            k: ring.k,
            size: ring.triangles.len(),
        });
    }
    let c = k.point(ring.nucleus);
    let mut keyed: Vec<(f64, f64, CellId, Point)> = ring
        .triangles
        .iter()
        .map(|&t| {
            let p = centroid(k.triangle_points(t));
            let angle = (p.y - c.y)
                .atan2(p.x - c.x)
                .rem_euclid(std::f64::consts::TAU);
            (angle, p.dist(c), t, p)
        })
        .collect();
    keyed.sort_by(|a, b| {
        a.0.total_cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });
    Ok(CentroidalCycle {
        nucleus: ring.nucleus,
        k: ring.k,
        triangles: keyed.iter().map(|e| e.2).collect(),
        points: keyed.iter().map(|e| e.3).collect(),
        closed: true,
    })
}

/// Closed polygon through the centroids of ring `ring`, in angular order
/// about the nucleus.
pub fn mcyc(k: &Complex, nucleus: usize, ring: usize) -> Result<CentroidalCycle, NerveError> {
    cycle_from_ring(k, &skcx(k, nucleus, ring)?)
}

/// Cycles for rings `1..=max_ring`; rings too small for a cycle are skipped
/// and listed.
pub fn mvort(k: &Complex, nucleus: usize, max_ring: usize) -> Result<Vortex, NerveError> {
    let rings = spoke_rings(k, nucleus, max_ring)?;
    let mut cycles = Vec::new();
    let mut skipped = Vec::new();
    for ring in rings.iter().skip(1) {
        match cycle_from_ring(k, ring) {
            Ok(c) => cycles.push(c),
            Err(_) => skipped.push(SkippedRing {
                k: ring.k,
                size: ring.triangles.len(),
            }),
        }
    }
    Ok(Vortex {
        nucleus,
        cycles,
        skipped,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingJson {
    pub k: usize,
    pub triangles: Vec<CellId>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleJson {
    pub k: usize,
    pub points: Vec<Point>,
}

/// `{"nucleus": 0, "rings": [...], "cycles": [...], "skipped": [...]}`
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpokeReport {
    pub nucleus: usize,
    pub rings: Vec<RingJson>,
    pub cycles: Vec<CycleJson>,
    pub skipped: Vec<SkippedRing>,
}

pub fn spoke_report(
    k: &Complex,
    nucleus: usize,
    max_ring: usize,
) -> Result<SpokeReport, NerveError> {
    let rings = spoke_rings(k, nucleus, max_ring)?;
    let vortex = mvort(k, nucleus, max_ring)?;
    Ok(SpokeReport {
        nucleus,
        rings: rings
            .into_iter()
            .skip(1)
            .map(|r| RingJson {
                k: r.k,
                triangles: r.triangles,
            })
            .collect(),
        cycles: vortex
            .cycles
            .into_iter()
            .map(|c| CycleJson {
                k: c.k,
                points: c.points,
            })
            .collect(),
        skipped: vortex.skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::fixtures::{hex_fan, strip, twin_hex_fans, two_ring_fan};

    #[test]
    fn hex_fan_nerves() {
        let k = hex_fan();
        let ns = nerves(&k).unwrap();
        assert_eq!(ns.len(), 7);
        assert_eq!(ns[0].order, 6);
        assert!(ns[1..].iter().all(|n| n.order == 2));
        let m = mnc(&k).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].nucleus, 0);
    }

    #[test]
    fn single_triangle_ties() {
        let k = build_complex(
            vec![Point::new(0., 0.), Point::new(1., 0.), Point::new(0., 1.)],
            &[[0, 1, 2]],
        )
        .unwrap();
        assert!(nerves(&k).unwrap().iter().all(|n| n.order == 1));
        assert_eq!(mnc(&k).unwrap().len(), 3);
    }

    #[test]
    fn twin_fans_tie() {
        let m = mnc(&twin_hex_fans()).unwrap();
        assert_eq!(m.iter().map(|n| n.nucleus).collect::<Vec<_>>(), vec![0, 7]);
    }

    #[test]
    fn strip_orders() {
        let k = strip();
        let orders: Vec<usize> = nerves(&k).unwrap().iter().map(|n| n.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 3, 3, 2, 1]);
    }

    #[test]
    fn no_triangles() {
        let k = crate::complex::Complex::from_cells_unchecked(vec![Point::new(0., 0.)], vec![])
            .unwrap();
        assert_eq!(nerves(&k), Err(NerveError::NoTriangles));
    }

    #[test]
    fn hex_fan_rings() {
        let k = hex_fan();
        assert_eq!(skcx(&k, 0, 0).unwrap().triangles, Vec::<CellId>::new());
        assert_eq!(skcx(&k, 0, 1).unwrap().triangles.len(), 6);
        assert!(skcx(&k, 0, 2).unwrap().triangles.is_empty());
        assert_eq!(skcx(&k, 99, 1), Err(NerveError::UnknownVertex(99)));
    }

    #[test]
    fn two_ring_fan_rings() {
        let k = two_ring_fan();
        let r2 = skcx(&k, 0, 2).unwrap();
        assert_eq!(r2.triangles.len(), 12);
        assert!(r2
            .triangles
            .iter()
            .all(|&t| !k.cell(t).vertices.contains(&0)));
        let c = mcyc(&k, 0, 2).unwrap();
        assert_eq!(c.points.len(), 12);
    }

    #[test]
    fn hex_cycle_is_regular() {
        let k = hex_fan();
        let c = mcyc(&k, 0, 1).unwrap();
        assert_eq!(c.points.len(), 6);
        // Centroid of (0, v_i, v_{i+1}) sits at distance 2/3 * cos(30deg).
        let r = 2.0 / 3.0 * (std::f64::consts::PI / 6.0).cos();
        for (i, p) in c.points.iter().enumerate() {
            assert!((p.dist(Point::new(0., 0.)) - r).abs() < 1e-12);
            let q = c.points[(i + 1) % 6];
            assert!((p.dist(q) - r).abs() < 1e-12);
        }
    }

    #[test]
    fn small_ring_rejected() {
        let k = strip();
        assert_eq!(
            mcyc(&k, 1, 1),
            Err(NerveError::RingTooSmall { k: 1, size: 2 })
        );
    }

    #[test]
    fn vortex_collection() {
        let v = mvort(&hex_fan(), 0, 3).unwrap();
        assert_eq!(v.cycles.len(), 1);
        assert_eq!(
            v.skipped,
            vec![SkippedRing { k: 2, size: 0 }, SkippedRing { k: 3, size: 0 }]
        );
        let v2 = mvort(&two_ring_fan(), 0, 2).unwrap();
        assert_eq!(
            v2.cycles.iter().map(|c| c.k).collect::<Vec<_>>(),
            vec![1, 2]
        );
        assert!(mvort(&hex_fan(), 0, 0).unwrap().cycles.is_empty());
    }
}
