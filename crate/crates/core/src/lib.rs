//! Proximal relator spaces over finite planar cell complexes.
//!
//! The crate models regions of a triangulated planar complex (or of the unit
//! segment / circle), the Lodato, strong and descriptive hyperconnectedness
//! relations between them, hyperconnected chains and links with their
//! adjacency graphs, nerve and spoke-ring structures around a nucleus vertex,
//! the sewing construction joining two points by a chain of triangle windows,
//! and an image pipeline that seeds a Delaunay triangulation with the
//! centroids of uniform-intensity holes.

pub mod chains;
pub mod complex;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod imaging;
pub mod interval;
pub mod nerve;
pub mod region;
pub mod relator;
pub mod render;
pub mod sewing;
pub mod triangulate;

pub use chains::{
    adjacency_graph, classify, glue_to_circle, interval_decomposition, is_path_graph,
    is_spanning_subgraph, verify_region_map, AdjGraph, ChainFamily, ChainReport, MapMode,
    RegionMap,
};
pub use complex::{build_complex, validate_cw, Ambient, Cell, CellId, CellKind, Complex, CwReport};
pub use error::Error;
pub use geometry::{AmbientPoint, Point};
pub use interval::{Interval, IntervalRegion, Rational};
pub use region::{closure, closures_intersect, interiors_intersect, CellRegion, Region};
pub use relator::{hdnear, hnear, hsn, Relator, RelatorRegistry, Verdict};
