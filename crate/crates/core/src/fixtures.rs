//! Small reference complexes used by tests, examples and the CLI golden files.

use crate::complex::{build_complex, Complex};
use crate::geometry::Point;
use crate::imaging::Grid;

fn unit_dir(i: usize, n: usize) -> Point {
    let a = std::f64::consts::TAU * i as f64 / n as f64;
    Point::new(a.cos(), a.sin())
}

/// Hexagon split into six triangles around a central vertex 0. Corners are
/// vertices 1..=6 counter-clockwise; fan triangle `i` is `(0, i, i % 6 + 1)`.
pub fn hex_fan() -> Complex {
    hex_fan_at(Point::new(0.0, 0.0), 1.0)
}

pub fn hex_fan_at(center: Point, radius: f64) -> Complex {
    let mut pts = vec![center];
    for i in 0..6 {
        let d = unit_dir(i, 6);
        pts.push(Point::new(center.x + radius * d.x, center.y + radius * d.y));
    }
    let tris: Vec<[usize; 3]> = (1..=6).map(|i| [0, i, i % 6 + 1]).collect();
    build_complex(pts, &tris).expect("hex fan is a valid complex")
}

/// Cell id of fan triangle `i` (1-based, counter-clockwise) of [`hex_fan`].
pub fn hex_fan_triangle(k: &Complex, i: usize) -> usize {
    k.cell_id(&[0, i, i % 6 + 1]).expect("fan triangle")
}

/// Two hex fans side by side with no shared cells.
pub fn twin_hex_fans() -> Complex {
    let a = hex_fan_at(Point::new(0.0, 0.0), 1.0);
    let b = hex_fan_at(Point::new(5.0, 0.0), 1.0);
    let mut pts = a.points().to_vec();
    pts.extend_from_slice(b.points());
    let mut tris: Vec<[usize; 3]> = (1..=6).map(|i| [0, i, i % 6 + 1]).collect();
    tris.extend((1..=6).map(|i| [7, 7 + i, 7 + i % 6 + 1]));
    build_complex(pts, &tris).expect("twin fans are a valid complex")
}

/// Zig-zag strip of five triangles `(i, i+1, i+2)`; triangle ids ascend
/// along the strip.
pub fn strip() -> Complex {
    let pts: Vec<Point> = (0..7)
        .map(|i| Point::new(i as f64 * 0.5, if i % 2 == 0 { 0.0 } else { 1.0 }))
        .collect();
    let tris: Vec<[usize; 3]> = (0..5).map(|i| [i, i + 1, i + 2]).collect();
    build_complex(pts, &tris).expect("strip is a valid complex")
}

/// Triangle ids of [`strip`] in strip order.
pub fn strip_triangles(k: &Complex) -> Vec<usize> {
    (0..5)
        .map(|i| k.cell_id(&[i, i + 1, i + 2]).expect("strip triangle"))
        .collect()
}

/// Hex fan (vertices 0..=6) surrounded by a ring of twelve triangles joining
/// the inner hexagon to an outer hexagon of radius 2 (vertices 7..=12).
pub fn two_ring_fan() -> Complex {
    let mut pts = vec![Point::new(0.0, 0.0)];
    for r in [1.0, 2.0] {
        for i in 0..6 {
            let d = unit_dir(i, 6);
            pts.push(Point::new(r * d.x, r * d.y));
        }
    }
    let inner = |i: usize| 1 + i % 6;
    let outer = |i: usize| 7 + i % 6;
    let mut tris: Vec<[usize; 3]> = (0..6).map(|i| [0, inner(i), inner(i + 1)]).collect();
    for i in 0..6 {
        tris.push([inner(i), inner(i + 1), outer(i)]);
        tris.push([inner(i + 1), outer(i + 1), outer(i)]);
    }
    build_complex(pts, &tris).expect("two-ring fan is a valid complex")
}

/// 8x8 image: columns 0..4 have intensity 50, columns 4..8 intensity 200.
pub fn two_block_image() -> Grid {
    Grid::from_fn(8, 8, |_, c| if c < 4 { 50.0 } else { 200.0 })
}

/// [`two_block_image`] with four extra rows of intensity 120 below.
pub fn three_block_image() -> Grid {
    Grid::from_fn(8, 12, |r, c| match (r, c) {
        (8.., _) => 120.0,
        (_, 0..=3) => 50.0,
        _ => 200.0,
    })
}

/// Top-left `(row, col)` corners and intensities of the three 6x6 blobs.
const BLOBS: [(usize, usize, f64); 3] = [(5, 17, 60.0), (23, 6, 120.0), (23, 28, 180.0)];

fn blob_at(r: usize, c: usize) -> Option<f64> {
    BLOBS
        .iter()
        .find(|&&(r0, c0, _)| (r0..r0 + 6).contains(&r) && (c0..c0 + 6).contains(&c))
        .map(|b| b.2)
}

/// 40x40 image with three constant squares centred at (20, 8), (9, 26) and
/// (31, 26) on a uniform background of 240. The background is itself a
/// hole whose centroid is the image centre (20, 20).
pub fn three_blob_image() -> Grid {
    Grid::from_fn(40, 40, |r, c| blob_at(r, c).unwrap_or(240.0))
}

/// The same three squares on a 0/255 checkerboard, which dissolves into
/// single pixels under 4-connectivity.
pub fn three_blob_checkerboard() -> Grid {
    Grid::from_fn(40, 40, |r, c| {
        blob_at(r, c).unwrap_or(if (r + c) % 2 == 0 { 0.0 } else { 255.0 })
    })
}
