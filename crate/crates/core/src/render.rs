//! Deterministic SVG 1.1 rendering of complexes and derived structures.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::Complex;
use crate::geometry::{centroid, Point};
use crate::nerve::{mcyc, mnc, skcx};
use crate::sewing::sew;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("unknown reference: {0}")]
    UnknownReference(String),
    #[error("canvas dimensions must be positive and exceed twice the margin")]
    InvalidCanvas,
    #[error("invalid style token {0:?}")]
    InvalidStyle(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LayerTarget {
    Mesh,
    /// All maximal nuclear clusters, or the nerve of one nucleus.
    Mnc {
        #[serde(default)]
        nucleus: Option<usize>,
    },
    Ring {
        nucleus: usize,
        k: usize,
    },
    Cycle {
        nucleus: usize,
        k: usize,
    },
    /// The dual path of the sew chain between two points.
    Chain {
        from: Point,
        to: Point,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Style {
    pub stroke: String,
    pub stroke_width: f64,
    pub fill: String,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke: "black".into(),
            stroke_width: 1.0,
            fill: "none".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Layer {
    #[serde(flatten)]
    pub target: LayerTarget,
    #[serde(default)]
    pub style: Style,
}

impl Layer {
    pub fn new(target: LayerTarget) -> Self {
        Layer {
            target,
            style: Style::default(),
        }
    }

    pub fn styled(target: LayerTarget, stroke: &str, stroke_width: f64) -> Self {
        Layer {
            target,
            style: Style {
                stroke: stroke.into(),
                stroke_width,
                fill: "none".into(),
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Canvas {
    pub width: f64,
    pub height: f64,
    pub margin: f64,
    /// Flip y so the mathematical y axis points up. Turn off for images,
    /// whose pixel rows already grow downward like SVG.
    #[serde(default = "default_flip")]
    pub flip_y: bool,
}

fn default_flip() -> bool {
    true
}

impl Default for Canvas {
    fn default() -> Self {
        Canvas {
            width: 400.0,
            height: 400.0,
            margin: 20.0,
            flip_y: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct RenderSpec {
    pub layers: Vec<Layer>,
    #[serde(default)]
    pub canvas: Canvas,
}

struct Affine {
    lo: Point,
    scale: f64,
    off: Point,
    canvas: Canvas,
}

impl Affine {
    fn fit(k: &Complex, canvas: Canvas) -> Self {
        let (lo, hi) = k.bounding_box();
        let (iw, ih) = (
            canvas.width - 2.0 * canvas.margin,
            canvas.height - 2.0 * canvas.margin,
        );
        let (bw, bh) = (hi.x - lo.x, hi.y - lo.y);
        let scale = match (bw > 0.0, bh > 0.0) {
            (true, true) => (iw / bw).min(ih / bh),
            (true, false) => iw / bw,
            (false, true) => ih / bh,
            (false, false) => 1.0,
        };
        let off = Point::new((iw - bw * scale) / 2.0, (ih - bh * scale) / 2.0);
        Affine {
            lo,
            scale,
            off,
            canvas,
        }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let c = &self.canvas;
        let x = c.margin + self.off.x + (p.x - self.lo.x) * self.scale;
        let dy = self.off.y + (p.y - self.lo.y) * self.scale;
        let y = if c.flip_y {
            c.height - c.margin - dy
        } else {
            c.margin + dy
        };
        (x, y)
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000".to_string()
    } else {
        s
    }
}

fn check_token(t: &str) -> Result<(), RenderError> {
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_alphanumeric() || c == '#') {
        return Err(RenderError::InvalidStyle(t.to_string()));
    }
    Ok(())
}

fn style_attrs(s: &Style) -> Result<String, RenderError> {
    check_token(&s.stroke)?;
    check_token(&s.fill)?;
    if !(s.stroke_width.is_finite() && s.stroke_width >= 0.0) {
        return Err(RenderError::InvalidStyle(s.stroke_width.to_string()));
    }
    Ok(format!(
        "stroke=\"{}\" stroke-width=\"{}\" fill=\"{}\"",
        s.stroke,
        num(s.stroke_width),
        s.fill
    ))
}

fn points_attr(f: &Affine, pts: &[Point]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = f.map(p);
            format!("{},{}", num(x), num(y))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn triangles_path(f: &Affine, k: &Complex, tris: &[usize]) -> String {
    tris.iter()
        .map(|&t| {
            format!(
                "M {} Z",
                points_attr(f, &k.triangle_points(t)).replace(' ', " L ")
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn unknown(e: impl std::fmt::Display) -> RenderError {
    RenderError::UnknownReference(e.to_string())
}

/// Renders `spec` over `k`. Pure: equal inputs give byte-identical output.
pub fn to_svg(k: &Complex, spec: &RenderSpec) -> Result<String, RenderError> {
    let c = spec.canvas;
    if !(c.width > 0.0
        && c.height > 0.0
        && c.margin >= 0.0
        && c.width > 2.0 * c.margin
        && c.height > 2.0 * c.margin)
        || ![c.width, c.height, c.margin].iter().all(|v| v.is_finite())
    {
        return Err(RenderError::InvalidCanvas);
    }
    let f = Affine::fit(k, c);
    let mut body = String::new();
    for (i, layer) in spec.layers.iter().enumerate() {
        let attrs = style_attrs(&layer.style)?;
        let element = match &layer.target {
            LayerTarget::Mesh => {
                let mut g = format!("<g class=\"mesh\" id=\"layer{i}\" {attrs}>\n");
                for e in k.edge_ids() {
                    let (x1, y1) = f.map(k.point(k.cell(e).vertices[0]));
                    let (x2, y2) = f.map(k.point(k.cell(e).vertices[1]));
                    let _ = writeln!(
                        g,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                        num(x1),
                        num(y1),
                        num(x2),
                        num(y2)
                    );
                }
                g.push_str("</g>");
                g
            }
            LayerTarget::Mnc { nucleus } => {
                let clusters = mnc(k).map_err(unknown)?;
                let mut tris: Vec<usize> = match nucleus {
                    None => clusters
                        .iter()
                        .flat_map(|n| n.triangles.iter().copied())
                        .collect(),
                    Some(v) => {
                        if *v >= k.num_vertices() {
                            return Err(unknown(format!("vertex {v}")));
                        }
                        k.vertex_star_triangles(*v)
                    }
                };
                tris.sort_unstable();
                tris.dedup();
                if tris.is_empty() {
                    return Err(unknown("empty cluster"));
                }
                format!(
                    "<path class=\"mnc\" id=\"layer{i}\" {attrs} d=\"{}\"/>",
                    triangles_path(&f, k, &tris)
                )
            }
            LayerTarget::Ring { nucleus, k: ring } => {
                let r = skcx(k, *nucleus, *ring).map_err(unknown)?;
                if r.triangles.is_empty() {
                    return Err(unknown(format!(
                        "ring {ring} about vertex {nucleus} is empty"
                    )));
                }
                format!(
                    "<path class=\"ring\" id=\"layer{i}\" {attrs} d=\"{}\"/>",
                    triangles_path(&f, k, &r.triangles)
                )
            }
            LayerTarget::Cycle { nucleus, k: ring } => {
                let cyc = mcyc(k, *nucleus, *ring).map_err(unknown)?;
                format!(
                    "<polygon class=\"cycle\" id=\"layer{i}\" {attrs} points=\"{}\"/>",
                    points_attr(&f, &cyc.points)
                )
            }
            LayerTarget::Chain { from, to } => {
                let chain = sew(k, *from, *to).map_err(unknown)?;
                let pts: Vec<Point> = chain
                    .dual_path
                    .iter()
                    .map(|&t| centroid(k.triangle_points(t)))
                    .collect();
                format!(
                    "<polyline class=\"chain\" id=\"layer{i}\" {attrs} points=\"{}\"/>",
                    points_attr(&f, &pts)
                )
            }
        };
        body.push_str(&element);
        body.push('\n');
    }
    let (w, h) = (num(c.width), num(c.height));
    Ok(format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n\
         <g id=\"canvas\">\n\
         <rect x=\"0\" y=\"0\" width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n\
         {body}</g>\n\
         </svg>\n"
    ))
}
