//! Regions of an ambient space and their closure / interior semantics.
//!
//! A planar region is a set of cells of a [`Complex`]; its interior meets
//! another region's interior iff both contain a common 2-cell, and closures
//! meet iff the face-closed cell sets share a cell. One-dimensional regions
//! are unions of closed rational intervals.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::complex::{Ambient, CellId, CellKind, Complex};
use crate::geometry::{dist_point_segment, dist_point_triangle, AmbientPoint, Point};
use crate::interval::{self, IntervalRegion};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegionError {
    #[error("regions live in different ambient spaces")]
    AmbientMismatch,
    #[error("region is empty")]
    EmptyRegion,
    #[error("cell {0} does not exist in the complex")]
    UnknownCell(CellId),
    #[error("interval [{0}, {1}] has lo > hi")]
    InvertedInterval(String, String),
    #[error("interval [{0}, {1}] leaves the unit segment")]
    IntervalOutOfRange(String, String),
    #[error("identical points have no separating neighbourhoods")]
    IdenticalPoints,
    #[error("at least two regions are required")]
    FewerThanTwoRegions,
    #[error("operation needs a cell region")]
    NotACellRegion,
}

/// A nonempty set of cells of one complex.
#[derive(Debug, Clone)]
pub struct CellRegion<'k> {
    complex: &'k Complex,
    cells: BTreeSet<CellId>,
}

impl PartialEq for CellRegion<'_> {
    fn eq(&self, o: &Self) -> bool {
        std::ptr::eq(self.complex, o.complex) && self.cells == o.cells
    }
}

impl<'k> CellRegion<'k> {
    pub fn new(
        complex: &'k Complex,
        cells: impl IntoIterator<Item = CellId>,
    ) -> Result<Self, RegionError> {
        let cells: BTreeSet<CellId> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(RegionError::EmptyRegion);
        }
        if let Some(&bad) = cells.iter().find(|&&c| !complex.contains_cell(c)) {
            return Err(RegionError::UnknownCell(bad));
        }
        Ok(CellRegion { complex, cells })
    }

    pub fn complex(&self) -> &'k Complex {
        self.complex
    }

    pub fn cells(&self) -> &BTreeSet<CellId> {
        &self.cells
    }

    pub fn triangles(&self) -> impl Iterator<Item = CellId> + '_ {
        self.cells
            .iter()
            .copied()
            .filter(|&c| self.complex.kind(c) == CellKind::Triangle)
    }

    pub fn closure(&self) -> CellRegion<'k> {
        CellRegion {
            complex: self.complex,
            cells: self.complex.closure_of(&self.cells),
        }
    }

    /// Distance from `p` to the union of the closed carriers.
    pub fn distance_to(&self, p: Point) -> f64 {
        self.cells
            .iter()
            .map(|&c| {
                let pts = self.complex.cell_points(c);
                match pts.len() {
                    1 => pts[0].dist(p),
                    2 => dist_point_segment(p, pts[0], pts[1]),
                    _ => dist_point_triangle(p, [pts[0], pts[1], pts[2]]),
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Region<'k> {
    Cells(CellRegion<'k>),
    Intervals(IntervalRegion),
}

impl<'k> From<CellRegion<'k>> for Region<'k> {
    fn from(r: CellRegion<'k>) -> Self {
        Region::Cells(r)
    }
}

impl From<IntervalRegion> for Region<'_> {
    fn from(r: IntervalRegion) -> Self {
        Region::Intervals(r)
    }
}

impl<'k> Region<'k> {
    pub fn cells(
        complex: &'k Complex,
        ids: impl IntoIterator<Item = CellId>,
    ) -> Result<Self, RegionError> {
        CellRegion::new(complex, ids).map(Region::Cells)
    }

    pub fn ambient(&self) -> Ambient {
        match self {
            Region::Cells(c) => c.complex.ambient(),
            Region::Intervals(i) => i.ambient(),
        }
    }

    pub fn as_cells(&self) -> Option<&CellRegion<'k>> {
        match self {
            Region::Cells(c) => Some(c),
            Region::Intervals(_) => None,
        }
    }

    pub fn as_intervals(&self) -> Option<&IntervalRegion> {
        match self {
            Region::Intervals(i) => Some(i),
            Region::Cells(_) => None,
        }
    }
}

/// Adds every face of every member cell. Interval regions are already closed.
pub fn closure<'k>(region: &Region<'k>) -> Region<'k> {
    match region {
        Region::Cells(c) => Region::Cells(c.closure()),
        Region::Intervals(_) => region.clone(),
    }
}

enum Homogeneous<'a, 'k> {
    Cells(Vec<&'a CellRegion<'k>>),
    Intervals(Vec<&'a IntervalRegion>),
}

fn homogeneous<'a, 'k>(regions: &[&'a Region<'k>]) -> Result<Homogeneous<'a, 'k>, RegionError> {
    if regions.len() < 2 {
        return Err(RegionError::FewerThanTwoRegions);
    }
    match regions[0] {
        Region::Cells(first) => regions
            .iter()
            .map(|r| match r {
                Region::Cells(c) if std::ptr::eq(c.complex, first.complex) => Ok(c),
                _ => Err(RegionError::AmbientMismatch),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Homogeneous::Cells),
        Region::Intervals(first) => regions
            .iter()
            .map(|r| match r {
                Region::Intervals(i) if i.ambient() == first.ambient() => Ok(i),
                _ => Err(RegionError::AmbientMismatch),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Homogeneous::Intervals),
    }
}

/// Do the interiors of all regions share a point?
pub fn common_interior(regions: &[&Region<'_>]) -> Result<bool, RegionError> {
    Ok(match homogeneous(regions)? {
        Homogeneous::Cells(cs) => {
            let mut common: BTreeSet<CellId> = cs[0].triangles().collect();
            for c in &cs[1..] {
                common.retain(|t| c.cells.contains(t));
            }
            !common.is_empty()
        }
        Homogeneous::Intervals(is) => interval::common_interior(&is),
    })
}

/// Do the closures of all regions share a point?
pub fn common_closure(regions: &[&Region<'_>]) -> Result<bool, RegionError> {
    Ok(match homogeneous(regions)? {
        Homogeneous::Cells(cs) => {
            let mut common = cs[0].closure().cells;
            for c in &cs[1..] {
                let cl = c.closure().cells;
                common.retain(|x| cl.contains(x));
            }
            !common.is_empty()
        }
        Homogeneous::Intervals(is) => interval::common_closure(&is),
    })
}

pub fn interiors_intersect(a: &Region<'_>, b: &Region<'_>) -> Result<bool, RegionError> {
    common_interior(&[a, b])
}

pub fn closures_intersect(a: &Region<'_>, b: &Region<'_>) -> Result<bool, RegionError> {
    common_closure(&[a, b])
}

/// Point-set nearness: is `p` within `tol` of the closed carrier?
/// A point of the wrong ambient is never near.
pub fn point_in_closure(region: &Region<'_>, p: AmbientPoint, tol: f64) -> bool {
    match (region, p) {
        (Region::Cells(c), AmbientPoint::Plane(q)) => c.distance_to(q) <= tol,
        (Region::Intervals(i), AmbientPoint::Line(t)) => i.distance_to(t) <= tol,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
}

impl Disk {
    pub fn contains(&self, p: Point) -> bool {
        self.center.dist(p) <= self.radius
    }
}

/// Disjoint closed disks of radius `|x - y| / 3` about two distinct points.
pub fn hausdorff_witness(x: Point, y: Point) -> Result<(Disk, Disk), RegionError> {
    let d = x.dist(y);
    if d == 0.0 {
        return Err(RegionError::IdenticalPoints);
    }
    let radius = d / 3.0;
    Ok((Disk { center: x, radius }, Disk { center: y, radius }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hex_fan, hex_fan_triangle, strip, strip_triangles};
    use crate::interval::rat;

    #[test]
    fn closure_of_triangle_and_vertex() {
        let k = hex_fan();
        let t1 = hex_fan_triangle(&k, 1);
        let r = Region::cells(&k, [t1]).unwrap();
        let cl = closure(&r);
        assert_eq!(cl.as_cells().unwrap().cells().len(), 7);
        let v = Region::cells(&k, [0]).unwrap();
        assert_eq!(closure(&v), v);
    }

    #[test]
    fn interior_cases() {
        let k = hex_fan();
        let t = |i| hex_fan_triangle(&k, i);
        let a = Region::cells(&k, [t(1), t(2)]).unwrap();
        let b = Region::cells(&k, [t(2), t(3)]).unwrap();
        assert!(interiors_intersect(&a, &b).unwrap());
        let c = Region::cells(&k, [t(1)]).unwrap();
        let d = Region::cells(&k, [t(2)]).unwrap();
        assert!(!interiors_intersect(&c, &d).unwrap());
        assert!(closures_intersect(&c, &d).unwrap());
        // Edge-only regions have empty planar interior.
        let e = Region::cells(&k, [7]).unwrap();
        assert!(!interiors_intersect(&e, &e).unwrap());
    }

    #[test]
    fn lodato_cases() {
        let k = hex_fan();
        let a = Region::cells(&k, [hex_fan_triangle(&k, 1)]).unwrap();
        let b = Region::cells(&k, [hex_fan_triangle(&k, 4)]).unwrap();
        assert!(closures_intersect(&a, &b).unwrap());

        let s = strip();
        let ts = strip_triangles(&s);
        let t1 = Region::cells(&s, [ts[0]]).unwrap();
        let t4 = Region::cells(&s, [ts[3]]).unwrap();
        assert!(!closures_intersect(&t1, &t4).unwrap());
    }

    #[test]
    fn ambient_mismatch() {
        let k = hex_fan();
        let s = strip();
        let a = Region::cells(&k, [0]).unwrap();
        let b = Region::cells(&s, [0]).unwrap();
        assert_eq!(
            interiors_intersect(&a, &b),
            Err(RegionError::AmbientMismatch)
        );
        let i: Region = IntervalRegion::single(Ambient::Segment, rat(0, 1), rat(1, 2))
            .unwrap()
            .into();
        let j: Region = IntervalRegion::single(Ambient::Circle, rat(0, 1), rat(1, 2))
            .unwrap()
            .into();
        assert_eq!(
            closures_intersect(&a, &i),
            Err(RegionError::AmbientMismatch)
        );
        assert_eq!(
            closures_intersect(&i, &j),
            Err(RegionError::AmbientMismatch)
        );
    }

    #[test]
    fn region_validation() {
        let k = hex_fan();
        assert_eq!(
            CellRegion::new(&k, []).unwrap_err(),
            RegionError::EmptyRegion
        );
        assert_eq!(
            CellRegion::new(&k, [99]).unwrap_err(),
            RegionError::UnknownCell(99)
        );
    }

    #[test]
    fn point_nearness() {
        let k = hex_fan();
        let t1 = hex_fan_triangle(&k, 1);
        let r = Region::cells(&k, [t1]).unwrap();
        let (p0, p2) = (k.point(0), k.point(2));
        let on_edge = Point::new((p0.x + p2.x) / 2.0, (p0.y + p2.y) / 2.0);
        assert!(point_in_closure(&r, AmbientPoint::Plane(on_edge), 1e-9));
        assert!(!point_in_closure(
            &r,
            AmbientPoint::Plane(Point::new(1.5, 0.0)),
            1e-9
        ));
        assert!(!point_in_closure(&r, AmbientPoint::Line(0.0), 1e-9));
    }

    #[test]
    fn witness_disks() {
        let (a, b) = hausdorff_witness(Point::new(0., 0.), Point::new(3., 0.)).unwrap();
        assert_eq!(a.radius, 1.0);
        assert_eq!(b.radius, 1.0);
        let gap = a.center.dist(b.center) - a.radius - b.radius;
        assert_eq!(gap, 1.0);
        let (c, d) = hausdorff_witness(Point::new(0., 0.), Point::new(0., 2e-9)).unwrap();
        assert!((c.radius - 2e-9 / 3.0).abs() < 1e-24);
        assert!(c.center.dist(d.center) > c.radius + d.radius);
        assert_eq!(
            hausdorff_witness(Point::new(1., 1.), Point::new(1., 1.)),
            Err(RegionError::IdenticalPoints)
        );
    }
}
