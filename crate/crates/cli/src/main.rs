//! `proxcell` command-line front end.
//!
//! Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use proxcell::chains::{FamilyJson, MapMode, RegionMap};
use proxcell::complex::ComplexJson;
use proxcell::imaging::{pipeline, read_image, Connectivity, PipelineParams};
use proxcell::interval::parse_rational;
use proxcell::nerve::{
    mcyc, mnc, spoke_report, spoke_rings, CycleJson, RingJson, SkippedRing, SpokeReport,
};
use proxcell::render::{to_svg, RenderSpec};
use proxcell::sewing::{cycle_through, sew};
use proxcell::triangulate::{delaunay, parse_points_csv, PointSet};
use proxcell::{
    adjacency_graph, classify, glue_to_circle, interval_decomposition, is_path_graph, validate_cw,
    verify_region_map, ChainFamily, Complex, Point,
};

#[derive(Parser)]
#[command(
    name = "proxcell",
    version,
    about = "Proximal cell complexes, chains and nerves"
)]
struct Cli {
    /// Seed for randomized inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the result here (atomically) instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingIndex {
    /// Ring 1 is the nerve of the nucleus.
    Recursive,
    /// Ring 1 is the first shell around the nerve.
    Shell,
}

#[derive(Subcommand)]
enum Command {
    /// Check closure finiteness, faces and planarity of a complex.
    Validate { complex: PathBuf },
    /// Delaunay triangulation of CSV points, or of `--random N` seeded points.
    #[command(group(ArgGroup::new("input").required(true).args(["points", "random"])))]
    Triangulate {
        points: Option<PathBuf>,
        #[arg(long, conflicts_with = "points")]
        random: Option<usize>,
    },
    /// Uniform-intensity holes and the hole-seeded complex of an image.
    Holes {
        image: PathBuf,
        #[arg(long, default_value_t = 10.0)]
        tolerance: f64,
        /// 4 or 8.
        #[arg(long, default_value = "4", value_parser = parse_connectivity)]
        connectivity: Connectivity,
        #[arg(long, default_value_t = 4)]
        min_area: usize,
    },
    /// Maximal nuclear clusters.
    Mnc { complex: PathBuf },
    /// Spoke ring `k` about a nucleus and its centroidal cycle.
    Skcx {
        complex: PathBuf,
        #[arg(long)]
        nucleus: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RingIndex::Recursive)]
        ring_index: RingIndex,
        /// Report every ring from 1 to k.
        #[arg(long)]
        all: bool,
    },
    /// Sew chain between two points.
    Sew {
        complex: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        from: Point,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        to: Point,
    },
    /// Closed link through points `x1,y1;x2,y2;...`.
    Cycle {
        complex: PathBuf,
        #[arg(long, value_parser = parse_points, allow_hyphen_values = true)]
        points: PointList,
    },
    /// Classify a family as chain or link; optionally glue it to the circle.
    #[command(group(ArgGroup::new("input").required(true).args(["family", "n"])))]
    ChainCheck {
        /// Family JSON; omit to use the interval decomposition `--n`, `--eta`.
        family: Option<PathBuf>,
        #[arg(long, requires = "eta", conflicts_with = "family")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        eta: Option<String>,
        /// Complex for cell families.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Glue a segment family to the circle and verify the gluing map.
        #[arg(long)]
        glue: bool,
    },
    /// Render a complex with the layers of a render spec as SVG.
    Render {
        complex: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum CliError {
    Domain(proxcell::Error),
    Io(std::io::Error),
    Parse(String),
}

impl CliError {
    fn kind(&self) -> String {
        match self {
            CliError::Domain(e) => e.kind(),
            CliError::Io(_) => "IoError".into(),
            CliError::Parse(_) => "ParseError".into(),
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Domain(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
            CliError::Parse(m) => m.clone(),
        }
    }
}

impl<E: Into<proxcell::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.into())
    }
}

type CliResult<T> = Result<T, CliError>;

fn parse_point(s: &str) -> Result<Point, String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("expected x,y but got {s:?}"))?;
    let x: f64 = x
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate {x:?}"))?;
    let y: f64 = y
        .trim()
        .parse()
        .map_err(|_| format!("bad coordinate {y:?}"))?;
    Ok(Point::new(x, y))
}

fn parse_connectivity(s: &str) -> Result<Connectivity, String> {
    s.parse::<u8>()
        .ok()
        .and_then(Connectivity::from_count)
        .ok_or_else(|| "connectivity must be 4 or 8".into())
}

#[derive(Clone)]
struct PointList(Vec<Point>);

fn parse_points(s: &str) -> Result<PointList, String> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_point)
        .collect::<Result<_, _>>()
        .map(PointList)
}

fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(CliError::Io)
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> CliResult<Complex> {
    let json: ComplexJson = parse_json(path)?;
    Ok(Complex::from_json(&json)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable output");
    s.push('\n');
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct HoleOut {
    centroid: Point,
    area: usize,
    mean_intensity: f64,
}

#[derive(Serialize)]
struct HolesOut {
    complex: ComplexJson,
    holes: Vec<HoleOut>,
}

#[derive(Serialize)]
struct NerveOut {
    nucleus: usize,
    order: usize,
    triangles: Vec<usize>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CycleOut {
    members: Vec<Vec<usize>>,
    segments: Vec<Vec<usize>>,
    is_chain: bool,
    is_link: bool,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ChainOut {
    family: FamilyJson,
    is_chain: bool,
    is_link: bool,
    violations: Vec<proxcell::chains::Violation>,
    edges: Vec<(usize, usize)>,
    is_path_graph: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    glued: Option<Box<ChainOut>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    maps: Vec<proxcell::chains::MapReport>,
}

fn chain_out(family: &ChainFamily<'_>) -> ChainOut {
    let report = classify(family);
    let graph = adjacency_graph(family);
    ChainOut {
        family: family.to_json(),
        is_chain: report.is_chain,
        is_link: report.is_link,
        violations: report.violations,
        edges: graph.edges.iter().copied().collect(),
        is_path_graph: is_path_graph(&graph),
        glued: None,
        maps: Vec::new(),
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    Ok(match &cli.command {
        Command::Validate { complex } => to_json(&validate_cw(&load_complex(complex)?)),
        Command::Triangulate { points, random } => {
            let pts = match (points, random) {
                (Some(path), _) => parse_points_csv(&read_text(path)?)?,
                (None, Some(n)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                    (0..*n).map(|_| Point::new(rng.gen(), rng.gen())).collect()
                }
                (None, None) => {
                    return Err(CliError::Parse("need a points file or --random N".into()))
                }
            };
            to_json(&delaunay(&PointSet::new(pts)?)?.to_json())
        }
        Command::Holes {
            image,
            tolerance,
            connectivity,
            min_area,
        } => {
            let grid = read_image(image)?;
            let params = PipelineParams {
                tolerance: *tolerance,
                connectivity: *connectivity,
                min_area: *min_area,
                ..PipelineParams::default()
            };
            let out = pipeline(&grid, &params)?;
            to_json(&HolesOut {
                complex: out.complex.to_json(),
                holes: out
                    .holes
                    .iter()
                    .map(|h| HoleOut {
                        centroid: h.centroid,
                        area: h.pixels.len(),
                        mean_intensity: h.mean_intensity,
                    })
                    .collect(),
            })
        }
        Command::Mnc { complex } => {
            let k = load_complex(complex)?;
            let out: Vec<NerveOut> = mnc(&k)?
                .into_iter()
                .map(|n| NerveOut {
                    nucleus: n.nucleus,
                    order: n.order,
                    triangles: n.triangles,
                })
                .collect();
            to_json(&out)
        }
        Command::Skcx {
            complex,
            nucleus,
            k,
            ring_index,
            all,
        } => {
            let cx = load_complex(complex)?;
            let ring = match ring_index {
                RingIndex::Recursive => *k,
                RingIndex::Shell => k + 1,
            };
            if *all {
                to_json(&spoke_report(&cx, *nucleus, ring)?)
            } else {
                let r = spoke_rings(&cx, *nucleus, ring)?
                    .pop()
                    .expect("ring 0 always present");
                let (cycles, skipped) = match mcyc(&cx, *nucleus, ring) {
                    Ok(c) => (
                        vec![CycleJson {
                            k: c.k,
                            points: c.points,
                        }],
                        vec![],
                    ),
                    Err(_) => (
                        vec![],
                        vec![SkippedRing {
                            k: r.k,
                            size: r.triangles.len(),
                        }],
                    ),
                };
                to_json(&SpokeReport {
                    nucleus: *nucleus,
                    rings: vec![RingJson {
                        k: r.k,
                        triangles: r.triangles,
                    }],
                    cycles,
                    skipped,
                })
            }
        }
        Command::Sew { complex, from, to } => {
            let k = load_complex(complex)?;
            let chain = sew(&k, *from, *to)?;
            to_json(&chain.to_json())
        }
        Command::Cycle { complex, points } => {
            let k = load_complex(complex)?;
            let c = cycle_through(&k, &points.0)?;
            let report = classify(&c.family);
            to_json(&CycleOut {
                members: c
                    .family
                    .members()
                    .iter()
                    .map(|m| {
                        m.as_cells()
                            .map(|r| r.cells().iter().copied().collect())
                            .unwrap_or_default()
                    })
                    .collect(),
                segments: c.segments.clone(),
                is_chain: report.is_chain,
                is_link: report.is_link,
            })
        }
        Command::ChainCheck {
            family,
            n,
            eta,
            complex,
            glue,
        } => {
            let k = complex.as_deref().map(load_complex).transpose()?;
            let fam = match (family, n, eta) {
                (Some(path), _, _) => {
                    let json: FamilyJson = parse_json(path)?;
                    ChainFamily::from_json(&json, k.as_ref())?
                }
                (None, Some(n), Some(eta)) => {
                    let eta = parse_rational(eta)
                        .ok_or_else(|| CliError::Parse(format!("bad rational {eta:?}")))?;
                    interval_decomposition(*n, eta)?
                }
                _ => {
                    return Err(CliError::Parse(
                        "need a family file or --n and --eta".into(),
                    ))
                }
            };
            let mut out = chain_out(&fam);
            if *glue {
                let glued = glue_to_circle(&fam)?;
                let map = RegionMap::between(&fam, &glued)?;
                out.maps = vec![
                    verify_region_map(&map, MapMode::Continuity),
                    verify_region_map(&map, MapMode::Equivalence),
                ];
                out.glued = Some(Box::new(chain_out(&glued)));
            }
            to_json(&out)
        }
        Command::Render { complex, spec } => {
            let k = load_complex(complex)?;
            let spec: RenderSpec = match spec {
                Some(path) => parse_json(path)?,
                None => RenderSpec {
                    layers: vec![proxcell::render::Layer::new(
                        proxcell::render::LayerTarget::Mesh,
                    )],
                    ..RenderSpec::default()
                },
            };
            to_svg(&k, &spec)?
        }
    })
}

fn emit(output: Option<&Path>, text: &str) -> std::io::Result<()> {
    match output {
        None => std::io::stdout().write_all(text.as_bytes()),
        Some(path) => {
            let dir = path
                .parent()
                .filter(|d| !d.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(text.as_bytes())?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result =
        run(&cli).and_then(|text| emit(cli.output.as_deref(), &text).map_err(CliError::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.message() });
            eprintln!("{body}");
            ExitCode::from(1)
        }
    }
}
