//! Grayscale images, uniform-intensity holes and the hole-seeded
//! triangulation pipeline.
//!
//! Pixel `(row, col)` has its center at `(col + 0.5, row + 0.5)`; hole
//! centroids and triangulations live in these pixel coordinates.

use std::collections::{BTreeMap, VecDeque};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{CellId, Complex};
use crate::geometry::{centroid, point_in_triangle, Point};
use crate::relator::{DescriptiveComplex, Probe, RelatorError};
use crate::triangulate::{delaunay, PointSet, TriangulateError};

#[derive(Debug, Error)]
pub enum ImagingError {
    #[error("unsupported image format")]
    UnsupportedFormat,
    #[error("corrupt image header: {0}")]
    CorruptHeader(String),
    #[error("cannot read image: {0}")]
    Io(#[from] std::io::Error),
    #[error("tolerance must be a non-negative number")]
    InvalidTolerance,
    #[error("minimum hole area must be positive")]
    InvalidMinArea,
    #[error("grid data length {len} does not match {width}x{height}")]
    BadDimensions {
        width: usize,
        height: usize,
        len: usize,
    },
    #[error("pipeline needs at least 3 holes, found {0}")]
    TooFewKeypoints(usize),
    #[error("hole centroids are collinear")]
    CollinearKeypoints,
    #[error(transparent)]
    Triangulate(TriangulateError),
    #[error(transparent)]
    Relator(#[from] RelatorError),
}

/// Row-major grayscale raster with values in `[0, 255]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    width: usize,
    height: usize,
    values: Vec<f64>,
}

impl Grid {
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self, ImagingError> {
        if width == 0 || height == 0 || values.len() != width * height {
            return Err(ImagingError::BadDimensions {
                width,
                height,
                len: values.len(),
            });
        }
        Ok(Grid {
            width,
            height,
            values,
        })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let values = (0..height)
            .flat_map(|r| (0..width).map(move |c| (r, c)))
            .map(|(r, c)| f(r, c))
            .collect();
        Grid {
            width,
            height,
            values,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Plain (P2) PGM text.
    pub fn to_pgm(&self) -> String {
        let mut s = format!("P2\n{} {}\n255\n", self.width, self.height);
        for row in self.values.chunks(self.width) {
            let line: Vec<String> = row.iter().map(|v| format!("{}", v.round() as u8)).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

pub fn luma(r: f64, g: f64, b: f64) -> f64 {
    0.299 * r + 0.587 * g + 0.114 * b
}

/// Reads a PGM (P2/P5) or PPM (P3/P6) file; PNG with the `png` feature.
pub fn read_image(path: impl AsRef<Path>) -> Result<Grid, ImagingError> {
    let bytes = std::fs::read(path)?;
    decode_image(&bytes)
}

pub fn decode_image(bytes: &[u8]) -> Result<Grid, ImagingError> {
    if bytes.len() >= 2 && bytes[0] == b'P' && matches!(bytes[1], b'2' | b'3' | b'5' | b'6') {
        return parse_pnm(bytes);
    }
    #[cfg(feature = "png")]
    if bytes.starts_with(b"\x89PNG") {
        return decode_png(bytes);
    }
    Err(ImagingError::UnsupportedFormat)
}

#[cfg(feature = "png")]
fn decode_png(bytes: &[u8]) -> Result<Grid, ImagingError> {
    let img = image::load_from_memory_with_format(bytes, image::ImageFormat::Png)
        .map_err(|e| ImagingError::CorruptHeader(e.to_string()))?
        .to_rgb8();
    let (w, h) = img.dimensions();
    let values = img
        .pixels()
        .map(|p| luma(p[0] as f64, p[1] as f64, p[2] as f64))
        .collect();
    Grid::new(w as usize, h as usize, values)
}

struct Header {
    width: usize,
    height: usize,
    maxval: usize,
    data_start: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header, ImagingError> {
    let corrupt = |m: &str| ImagingError::CorruptHeader(m.to_string());
    let mut pos = 2;
    let mut fields = [0usize; 3];
    for field in &mut fields {
        loop {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            if pos < bytes.len() && bytes[pos] == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if start == pos {
            return Err(corrupt("missing header field"));
        }
        *field = std::str::from_utf8(&bytes[start..pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| corrupt("bad header number"))?;
    }
    if pos >= bytes.len() || !bytes[pos].is_ascii_whitespace() {
        return Err(corrupt("header not terminated"));
    }
    let [width, height, maxval] = fields;
    if width == 0 || height == 0 || maxval == 0 || maxval > 65535 {
        return Err(corrupt("invalid dimensions or maxval"));
    }
    Ok(Header {
        width,
        height,
        maxval,
        data_start: pos + 1,
    })
}

fn parse_pnm(bytes: &[u8]) -> Result<Grid, ImagingError> {
    let kind = bytes[1];
    let h = parse_header(bytes)?;
    let channels = if matches!(kind, b'3' | b'6') { 3 } else { 1 };
    let count = h.width * h.height * channels;
    let raw: Vec<f64> = if matches!(kind, b'2' | b'3') {
        let text = std::str::from_utf8(&bytes[h.data_start..])
            .map_err(|_| ImagingError::CorruptHeader("non-ascii sample data".into()))?;
        let vals = text
            .split_ascii_whitespace()
            .take(count)
            .map(|t| t.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| ImagingError::CorruptHeader("bad sample".into()))?;
        vals
    } else {
        let wide = h.maxval > 255;
        let need = count * if wide { 2 } else { 1 };
        let data = &bytes[h.data_start..];
        if data.len() < need {
            return Err(ImagingError::CorruptHeader("truncated sample data".into()));
        }
        if wide {
            data[..need]
                .chunks(2)
                .map(|c| u16::from_be_bytes([c[0], c[1]]) as f64)
                .collect()
        } else {
            data[..need].iter().map(|&b| b as f64).collect()
        }
    };
    if raw.len() < count {
        return Err(ImagingError::CorruptHeader("truncated sample data".into()));
    }
    let scale = 255.0 / h.maxval as f64;
    let values: Vec<f64> = if channels == 3 {
        raw.chunks(3)
            .map(|c| luma(c[0], c[1], c[2]) * scale)
            .collect()
    } else if h.maxval == 255 {
        raw
    } else {
        raw.into_iter().map(|v| v * scale).collect()
    };
    Grid::new(h.width, h.height, values)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Connectivity {
    #[default]
    Four,
    Eight,
}

impl Connectivity {
    pub fn from_count(n: u8) -> Option<Self> {
        match n {
            4 => Some(Connectivity::Four),
            8 => Some(Connectivity::Eight),
            _ => None,
        }
    }

    fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(-1, 0), (0, -1), (0, 1), (1, 0)],
            Connectivity::Eight => &[
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 1),
                (1, -1),
                (1, 0),
                (1, 1),
            ],
        }
    }
}

/// A connected region of near-constant intensity.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Hole {
    /// `(row, col)` pairs in discovery order.
    pub pixels: Vec<(usize, usize)>,
    pub centroid: Point,
    pub mean_intensity: f64,
}

/// Flood fill from unvisited pixels in row-major order; a pixel joins when
/// its intensity is within `tolerance` of the seed pixel. Components
/// smaller than `min_area` are dropped. Holes are sorted by centroid
/// `(y, x)`.
pub fn extract_holes(
    g: &Grid,
    tolerance: f64,
    connectivity: Connectivity,
    min_area: usize,
) -> Result<Vec<Hole>, ImagingError> {
    if tolerance.is_nan() || tolerance < 0.0 {
        return Err(ImagingError::InvalidTolerance);
    }
    if min_area == 0 {
        return Err(ImagingError::InvalidMinArea);
    }
    let (w, h) = (g.width, g.height);
    let mut visited = vec![false; w * h];
    let mut holes = Vec::new();
    for seed in 0..w * h {
        if visited[seed] {
            continue;
        }
        let seed_value = g.values[seed];
        visited[seed] = true;
        let mut queue = VecDeque::from([seed]);
        let mut pixels = Vec::new();
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / w, i % w);
            pixels.push((r, c));
            for &(dr, dc) in connectivity.offsets() {
                let (nr, nc) = (r as isize + dr, c as isize + dc);
                if nr < 0 || nc < 0 || nr >= h as isize || nc >= w as isize {
                    continue;
                }
                let j = nr as usize * w + nc as usize;
                if !visited[j] && (g.values[j] - seed_value).abs() <= tolerance {
                    visited[j] = true;
                    queue.push_back(j);
                }
            }
        }
        if pixels.len() < min_area {
            continue;
        }
        let n = pixels.len() as f64;
        let (sx, sy, sv) = pixels
            .iter()
            .fold((0.0, 0.0, 0.0), |(sx, sy, sv), &(r, c)| {
                (sx + c as f64 + 0.5, sy + r as f64 + 0.5, sv + g.get(r, c))
            });
        holes.push(Hole {
            pixels,
            centroid: Point::new(sx / n, sy / n),
            mean_intensity: sv / n,
        });
    }
    holes.sort_by(|a, b| {
        a.centroid
            .y
            .total_cmp(&b.centroid.y)
            .then(a.centroid.x.total_cmp(&b.centroid.x))
    });
    Ok(holes)
}

/// Mean intensity of the pixels whose centers lie in the closed triangle;
/// the pixel under the centroid when none do.
pub fn sample_triangle(g: &Grid, tri: [Point; 3]) -> f64 {
    let min_x = tri.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let max_x = tri.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = tri.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let max_y = tri.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let clamp_idx = |v: f64, n: usize| (v.max(0.0) as usize).min(n - 1);
    let (c0, c1) = (
        clamp_idx((min_x - 0.5).floor(), g.width),
        clamp_idx((max_x - 0.5).ceil(), g.width),
    );
    let (r0, r1) = (
        clamp_idx((min_y - 0.5).floor(), g.height),
        clamp_idx((max_y - 0.5).ceil(), g.height),
    );
    let mut sum = 0.0;
    let mut count = 0usize;
    for r in r0..=r1 {
        for c in c0..=c1 {
            if point_in_triangle(Point::new(c as f64 + 0.5, r as f64 + 0.5), tri) {
                sum += g.get(r, c);
                count += 1;
            }
        }
    }
    if count > 0 {
        return sum / count as f64;
    }
    let ct = centroid(tri);
    g.get(
        clamp_idx(ct.y.floor(), g.height),
        clamp_idx(ct.x.floor(), g.width),
    )
}

/// Per-triangle mean intensities of `g` under `k`.
pub fn sample_intensities(g: &Grid, k: &Complex) -> BTreeMap<CellId, f64> {
    k.triangle_ids()
        .map(|t| (t, sample_triangle(g, k.triangle_points(t))))
        .collect()
}

pub fn descriptive_complex_from_grid(
    g: &Grid,
    k: Complex,
    probe: Probe,
) -> Result<DescriptiveComplex, ImagingError> {
    let field = sample_intensities(g, &k);
    Ok(DescriptiveComplex::new(k, probe, Some(&field))?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub tolerance: f64,
    pub connectivity: Connectivity,
    pub min_area: usize,
    pub features: Vec<String>,
}

impl Default for PipelineParams {
    fn default() -> Self {
        PipelineParams {
            tolerance: 10.0,
            connectivity: Connectivity::Four,
            min_area: 4,
            features: vec!["meanIntensity".to_string()],
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub complex: Complex,
    pub descriptive: DescriptiveComplex,
    pub holes: Vec<Hole>,
}

/// Holes → centroids → Delaunay triangulation → intensity-probed complex.
pub fn pipeline(g: &Grid, params: &PipelineParams) -> Result<PipelineOutput, ImagingError> {
    let holes = extract_holes(g, params.tolerance, params.connectivity, params.min_area)?;
    if holes.len() < 3 {
        return Err(ImagingError::TooFewKeypoints(holes.len()));
    }
    let ps = PointSet::new(holes.iter().map(|h| h.centroid).collect()).map_err(|e| match e {
        TriangulateError::CollinearInput => ImagingError::CollinearKeypoints,
        other => ImagingError::Triangulate(other),
    })?;
    let complex = delaunay(&ps).map_err(ImagingError::Triangulate)?;
    let probe = Probe::from_names(&params.features)?;
    let descriptive = descriptive_complex_from_grid(g, complex.clone(), probe)?;
    Ok(PipelineOutput {
        complex,
        descriptive,
        holes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_block() -> Grid {
        Grid::from_fn(8, 8, |_, c| if c < 4 { 50.0 } else { 200.0 })
    }

    #[test]
    fn plain_and_binary_pgm_agree() {
        let a = decode_image(b"P2\n2 2\n255\n0 0 0 0\n").unwrap();
        assert_eq!(a, Grid::new(2, 2, vec![0.0; 4]).unwrap());
        let b = decode_image(b"P5\n2 2\n255\n\0\0\0\0").unwrap();
        assert_eq!(a, b);
        let c = decode_image(b"P2\n# comment\n2 1\n255\n7 9\n").unwrap();
        assert_eq!(c.values(), &[7.0, 9.0]);
    }

    #[test]
    fn pgm_errors() {
        assert!(matches!(
            decode_image(b"P5\n2 2\n255\n\0\0"),
            Err(ImagingError::CorruptHeader(_))
        ));
        assert!(matches!(
            decode_image(b"P2\n2 2\n255\n1 2 3"),
            Err(ImagingError::CorruptHeader(_))
        ));
        assert!(matches!(
            decode_image(b"P2\n2"),
            Err(ImagingError::CorruptHeader(_))
        ));
        assert!(matches!(
            decode_image(b"GIF89a"),
            Err(ImagingError::UnsupportedFormat)
        ));
    }

    #[test]
    fn ppm_uses_luma() {
        let g = decode_image(b"P3\n1 1\n255\n100 200 50\n").unwrap();
        assert!((g.get(0, 0) - (0.299 * 100.0 + 0.587 * 200.0 + 0.114 * 50.0)).abs() < 1e-9);
    }

    #[test]
    fn pgm_round_trip() {
        let g = two_block();
        assert_eq!(decode_image(g.to_pgm().as_bytes()).unwrap(), g);
    }

    #[test]
    fn two_blocks_two_holes() {
        let holes = extract_holes(&two_block(), 10.0, Connectivity::Four, 4).unwrap();
        assert_eq!(holes.len(), 2);
        assert_eq!(holes[0].centroid, Point::new(2.0, 4.0));
        assert_eq!(holes[1].centroid, Point::new(6.0, 4.0));
        assert_eq!(holes[0].mean_intensity, 50.0);
        assert_eq!(holes[1].mean_intensity, 200.0);
    }

    #[test]
    fn constant_image_single_hole() {
        let g = Grid::from_fn(5, 3, |_, _| 9.0);
        let holes = extract_holes(&g, 0.0, Connectivity::Four, 1).unwrap();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0].pixels.len(), 15);
    }

    #[test]
    fn checkerboard_dissolves() {
        let g = Grid::from_fn(6, 6, |r, c| if (r + c) % 2 == 0 { 0.0 } else { 255.0 });
        assert!(extract_holes(&g, 10.0, Connectivity::Four, 2)
            .unwrap()
            .is_empty());
        assert_eq!(
            extract_holes(&g, 10.0, Connectivity::Four, 1)
                .unwrap()
                .len(),
            36
        );
        // Diagonal neighbours join under 8-connectivity.
        assert_eq!(
            extract_holes(&g, 10.0, Connectivity::Eight, 2)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn seed_relative_tolerance() {
        // A ramp drifts away from the seed value even though neighbours are close.
        let g = Grid::from_fn(6, 1, |_, c| c as f64 * 4.0);
        let holes = extract_holes(&g, 5.0, Connectivity::Four, 1).unwrap();
        assert_eq!(
            holes.iter().map(|h| h.pixels.len()).collect::<Vec<_>>(),
            vec![2, 2, 2]
        );
    }

    #[test]
    fn parameter_errors() {
        let g = two_block();
        assert!(matches!(
            extract_holes(&g, -1.0, Connectivity::Four, 1),
            Err(ImagingError::InvalidTolerance)
        ));
        assert!(matches!(
            extract_holes(&g, 1.0, Connectivity::Four, 0),
            Err(ImagingError::InvalidMinArea)
        ));
        assert!(matches!(
            pipeline(&g, &PipelineParams::default()),
            Err(ImagingError::TooFewKeypoints(2))
        ));
    }

    #[test]
    fn collinear_keypoints() {
        let g = Grid::from_fn(12, 4, |_, c| (c / 4) as f64 * 100.0);
        assert!(matches!(
            pipeline(&g, &PipelineParams::default()),
            Err(ImagingError::CollinearKeypoints)
        ));
    }

    #[test]
    fn empty_sample_falls_back_to_centroid_pixel() {
        let g = Grid::from_fn(4, 4, |r, c| (r * 4 + c) as f64);
        let thin = [
            Point::new(1.1, 1.1),
            Point::new(1.3, 1.1),
            Point::new(1.1, 1.3),
        ];
        assert_eq!(sample_triangle(&g, thin), g.get(1, 1));
    }
}
