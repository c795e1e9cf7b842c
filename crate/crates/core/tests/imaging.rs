use std::collections::BTreeSet;

use proptest::prelude::*;

use proxcell::fixtures::{three_blob_checkerboard, three_blob_image, three_block_image};
use proxcell::imaging::{
    extract_holes, pipeline, Connectivity, Grid, ImagingError, PipelineParams,
};
use proxcell::{validate_cw, Point};

#[test]
fn three_blobs_on_checkerboard_give_one_triangle() {
    let out = pipeline(&three_blob_checkerboard(), &PipelineParams::default()).unwrap();
    assert_eq!(out.holes.len(), 3);
    assert_eq!(out.complex.num_triangles(), 1);
    let centroids: Vec<Point> = out.holes.iter().map(|h| h.centroid).collect();
    assert_eq!(
        centroids,
        vec![
            Point::new(20.0, 8.0),
            Point::new(9.0, 26.0),
            Point::new(31.0, 26.0)
        ]
    );
}

#[test]
fn uniform_background_is_a_fourth_hole() {
    let out = pipeline(&three_blob_image(), &PipelineParams::default()).unwrap();
    assert_eq!(out.holes.len(), 4);
    assert!(out
        .holes
        .iter()
        .any(|h| h.centroid == Point::new(20.0, 20.0) && h.mean_intensity == 240.0));
    assert_eq!(out.complex.num_triangles(), 3);
}

#[test]
fn three_blocks_pass_validation() {
    let out = pipeline(&three_block_image(), &PipelineParams::default()).unwrap();
    assert_eq!(out.holes.len(), 3);
    assert!(validate_cw(&out.complex).verdict);
    for t in out.complex.triangle_ids() {
        assert!(out.descriptive.cell_description(t).is_some());
    }
}

#[test]
fn pipeline_is_deterministic() {
    let a = pipeline(&three_blob_image(), &PipelineParams::default()).unwrap();
    let b = pipeline(&three_blob_image(), &PipelineParams::default()).unwrap();
    assert_eq!(a.holes, b.holes);
    assert_eq!(a.complex, b.complex);
}

fn pad(g: &Grid, value: f64) -> Grid {
    Grid::from_fn(g.width() + 2, g.height() + 2, |r, c| {
        if r == 0 || c == 0 || r > g.height() || c > g.width() {
            value
        } else {
            g.get(r - 1, c - 1)
        }
    })
}

#[test]
fn translation_shifts_centroids() {
    // The frame has the background value: the background hole grows but
    // stays centred, so every centroid moves by exactly (1, 1).
    let g = three_blob_image();
    let a = pipeline(&g, &PipelineParams::default()).unwrap();
    let b = pipeline(&pad(&g, 240.0), &PipelineParams::default()).unwrap();
    assert_eq!(a.holes.len(), b.holes.len());
    for (h, k) in a.holes.iter().zip(&b.holes) {
        assert_eq!(
            Point::new(h.centroid.x + 1.0, h.centroid.y + 1.0),
            k.centroid
        );
        if h.mean_intensity != 240.0 {
            assert_eq!(h.pixels.len(), k.pixels.len());
        }
    }
    for v in 0..a.complex.num_vertices() {
        let p = a.complex.point(v);
        assert_eq!(Point::new(p.x + 1.0, p.y + 1.0), b.complex.point(v));
    }
    assert_eq!(a.complex.cells(), b.complex.cells());
}

#[test]
fn two_holes_are_too_few() {
    let g = Grid::from_fn(8, 8, |_, c| if c < 4 { 50.0 } else { 200.0 });
    assert!(matches!(
        pipeline(&g, &PipelineParams::default()),
        Err(ImagingError::TooFewKeypoints(2))
    ));
}

/// Depth-first regrowth of the component of `seed`, skipping taken pixels.
fn regrow(
    g: &Grid,
    seed: (usize, usize),
    tol: f64,
    taken: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let v0 = g.get(seed.0, seed.1);
    let mut out = BTreeSet::from([seed]);
    let mut stack = vec![seed];
    while let Some((r, c)) = stack.pop() {
        let mut nbrs = vec![];
        if r > 0 {
            nbrs.push((r - 1, c));
        }
        if c > 0 {
            nbrs.push((r, c - 1));
        }
        if r + 1 < g.height() {
            nbrs.push((r + 1, c));
        }
        if c + 1 < g.width() {
            nbrs.push((r, c + 1));
        }
        for n in nbrs {
            if !taken.contains(&n) && (g.get(n.0, n.1) - v0).abs() <= tol && out.insert(n) {
                stack.push(n);
            }
        }
    }
    out
}

proptest! {
    #[test]
    fn holes_partition_accepted_pixels(
        w in 1usize..10,
        h in 1usize..10,
        seed in proptest::collection::vec(0u8..4, 100),
        tol in 0.0f64..60.0,
        min_area in 1usize..4,
    ) {
        let g = Grid::from_fn(w, h, |r, c| seed[r * 10 + c] as f64 * 50.0);
        let holes = extract_holes(&g, tol, Connectivity::Four, min_area).unwrap();
        let mut seen = BTreeSet::new();
        for hole in &holes {
            prop_assert!(hole.pixels.len() >= min_area);
            for &p in &hole.pixels {
                prop_assert!(seen.insert(p), "pixel {:?} in two holes", p);
            }
        }
        // Sorted by centroid (y, x).
        for pair in holes.windows(2) {
            let (a, b) = (pair[0].centroid, pair[1].centroid);
            prop_assert!((a.y, a.x) <= (b.y, b.x));
        }
        // With min_area 1 every pixel is covered and components match the
        // seed-relative regrowth in row-major seed order.
        if min_area == 1 {
            prop_assert_eq!(seen.len(), w * h);
            let mut taken = BTreeSet::new();
            let mut expected = Vec::new();
            for r in 0..h {
                for c in 0..w {
                    if !taken.contains(&(r, c)) {
                        let comp = regrow(&g, (r, c), tol, &taken);
                        taken.extend(comp.iter().copied());
                        expected.push(comp);
                    }
                }
            }
            let mut got: Vec<BTreeSet<(usize, usize)>> =
                holes.iter().map(|h| h.pixels.iter().copied().collect()).collect();
            got.sort();
            expected.sort();
            prop_assert_eq!(got, expected);
        }
    }
}
