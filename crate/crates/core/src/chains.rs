//! Hyperconnected chains and links, their adjacency graphs, and region maps.
//!
//! A family `A_0, …, A_{n-1}` is a *link* when every pair with `|i - j| <= 1`
//! is strongly near, and a *chain* when in addition every pair with
//! `|i - j| > 1` is far. The strong relation (`hsn`) is used unless a
//! different relator is passed to the `*_with` variants.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Ambient, CellId, Complex};
use crate::interval::{Interval, IntervalRegion, Rational};
use crate::region::{Region, RegionError};
use crate::relator::{Relator, RelatorError, Strong, Verdict};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChainError {
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Relator(#[from] RelatorError),
    #[error("a family needs at least two members, got {0}")]
    TooFewMembers(usize),
    #[error("eta = {eta} must satisfy 0 < eta < 1/(2n) = {bound}")]
    EtaOutOfRange { eta: String, bound: String },
    #[error("decomposition needs n >= 2, got {0}")]
    BadCount(usize),
    #[error("gluing needs a family of segment intervals")]
    NotASegmentFamily,
    #[error("a region map needs distinct sources")]
    DuplicateSource,
    #[error("cell members need a complex")]
    MissingComplex,
}

/// An ordered family of at least two regions of one ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainFamily<'k> {
    members: Vec<Region<'k>>,
}

fn check_shared_ambient(members: &[Region<'_>]) -> Result<(), RegionError> {
    let first = &members[0];
    for m in &members[1..] {
        let same = match (first, m) {
            (Region::Cells(a), Region::Cells(b)) => std::ptr::eq(a.complex(), b.complex()),
            (Region::Intervals(a), Region::Intervals(b)) => a.ambient() == b.ambient(),
            _ => false,
        };
        if !same {
            return Err(RegionError::AmbientMismatch);
        }
    }
    Ok(())
}

impl<'k> ChainFamily<'k> {
    pub fn new(members: Vec<Region<'k>>) -> Result<Self, ChainError> {
        if members.len() < 2 {
            return Err(ChainError::TooFewMembers(members.len()));
        }
        check_shared_ambient(&members)?;
        Ok(ChainFamily { members })
    }

    pub fn members(&self) -> &[Region<'k>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ambient(&self) -> Ambient {
        self.members[0].ambient()
    }

    /// Members `range`, as a new family.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Result<Self, ChainError> {
        Self::new(self.members[range].to_vec())
    }
}

/// Simple undirected graph on member indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjGraph {
    pub nodes: Vec<usize>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl AdjGraph {
    pub fn new(nodes: Vec<usize>, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges = edges
            .into_iter()
            .filter(|(a, b)| a != b)
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        AdjGraph { nodes, edges }
    }

    /// Path `0 - 1 - … - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new((0..n).collect(), (1..n).map(|i| (i - 1, i)))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    pub fn union(&self, other: &AdjGraph) -> AdjGraph {
        let mut nodes: BTreeSet<usize> = self.nodes.iter().copied().collect();
        nodes.extend(other.nodes.iter().copied());
        AdjGraph::new(
            nodes.into_iter().collect(),
            self.edges.iter().chain(&other.edges).copied(),
        )
    }

    /// Relabels node `i` as `offset + i`.
    pub fn shifted(&self, offset: usize) -> AdjGraph {
        AdjGraph::new(
            self.nodes.iter().map(|n| n + offset).collect(),
            self.edges.iter().map(|&(a, b)| (a + offset, b + offset)),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub expected: Verdict,
    pub got: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainReport {
    pub is_chain: bool,
    pub is_link: bool,
    pub violations: Vec<Violation>,
}

fn pair_verdicts(
    family: &ChainFamily<'_>,
    relator: &dyn Relator,
) -> Result<BTreeMap<(usize, usize), Verdict>, ChainError> {
    let m = &family.members;
    let mut out = BTreeMap::new();
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            out.insert((i, j), relator.pair(&m[i], &m[j])?);
        }
    }
    Ok(out)
}

pub fn adjacency_graph_with(
    family: &ChainFamily<'_>,
    relator: &dyn Relator,
) -> Result<AdjGraph, ChainError> {
    let verdicts = pair_verdicts(family, relator)?;
    Ok(AdjGraph::new(
        (0..family.len()).collect(),
        verdicts
            .into_iter()
            .filter(|(_, v)| v.is_near())
            .map(|(p, _)| p),
    ))
}

/// Edge `{i, j}` iff members `i` and `j` are strongly near.
pub fn adjacency_graph(family: &ChainFamily<'_>) -> AdjGraph {
    adjacency_graph_with(family, &Strong).expect("family members share an ambient")
}

pub fn classify_with(
    family: &ChainFamily<'_>,
    relator: &dyn Relator,
) -> Result<ChainReport, ChainError> {
    let verdicts = pair_verdicts(family, relator)?;
    let mut violations = Vec::new();
    let mut link_ok = true;
    let mut far_ok = true;
    for (&(i, j), &got) in &verdicts {
        let expected = if j - i <= 1 {
            Verdict::Near
        } else {
            Verdict::Far
        };
        if got != expected {
            if expected == Verdict::Near {
                link_ok = false;
            } else {
                far_ok = false;
            }
            violations.push(Violation {
                i,
                j,
                expected,
                got,
            });
        }
    }
    Ok(ChainReport {
        is_chain: link_ok && far_ok,
        is_link: link_ok,
        violations,
    })
}

pub fn classify(family: &ChainFamily<'_>) -> ChainReport {
    classify_with(family, &Strong).expect("family members share an ambient")
}

/// Connected, acyclic, two nodes of degree 1 and the rest of degree 2.
pub fn is_path_graph(g: &AdjGraph) -> bool {
    let n = g.nodes.len();
    if n < 2 || g.edges.len() != n - 1 {
        return false;
    }
    let node_set: BTreeSet<usize> = g.nodes.iter().copied().collect();
    if node_set.len() != n
        || g.edges
            .iter()
            .any(|(a, b)| !node_set.contains(a) || !node_set.contains(b))
    {
        return false;
    }
    let mut degree: BTreeMap<usize, usize> = g.nodes.iter().map(|&v| (v, 0)).collect();
    for &(a, b) in &g.edges {
        *degree.get_mut(&a).unwrap() += 1;
        *degree.get_mut(&b).unwrap() += 1;
    }
    let ones = degree.values().filter(|&&d| d == 1).count();
    let twos = degree.values().filter(|&&d| d == 2).count();
    if ones != 2 || twos != n - 2 {
        return false;
    }
    // With n - 1 edges, connectivity implies acyclicity.
    let mut seen = BTreeSet::from([g.nodes[0]]);
    let mut stack = vec![g.nodes[0]];
    while let Some(v) = stack.pop() {
        for &(a, b) in &g.edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == n
}

/// Equal node sets and every edge of `sub` present in `sup`.
pub fn is_spanning_subgraph(sub: &AdjGraph, sup: &AdjGraph) -> bool {
    let a: BTreeSet<usize> = sub.nodes.iter().copied().collect();
    let b: BTreeSet<usize> = sup.nodes.iter().copied().collect();
    a == b && sub.edges.is_subset(&sup.edges)
}

/// Cover of `[0, 1]` by `n` intervals `[i/n - eta, (i+1)/n + eta]`, clamped
/// to the segment. Requires `0 < eta < 1/(2n)`, which makes it a chain.
pub fn interval_decomposition(n: usize, eta: Rational) -> Result<ChainFamily<'static>, ChainError> {
    if n < 2 {
        return Err(ChainError::BadCount(n));
    }
    let nn = Rational::from_integer(n as i64);
    let bound = Rational::one() / (nn * 2);
    if eta <= Rational::zero() || eta >= bound {
        return Err(ChainError::EtaOutOfRange {
            eta: eta.to_string(),
            bound: bound.to_string(),
        });
    }
    let members = (0..n as i64)
        .map(|i| {
            let lo = (Rational::from_integer(i) / nn - eta).max(Rational::zero());
            let hi = (Rational::from_integer(i + 1) / nn + eta).min(Rational::one());
            IntervalRegion::single(Ambient::Segment, lo, hi).map(Region::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    ChainFamily::new(members)
}

/// Largest positive-length overlap between two interval regions.
fn overlap_length(a: &IntervalRegion, b: &IntervalRegion) -> Rational {
    let mut best = Rational::zero();
    for p in a.pieces() {
        for q in b.pieces() {
            let len = p.hi.min(q.hi) - p.lo.max(q.lo);
            if len > best {
                best = len;
            }
        }
    }
    best
}

/// Collar used when gluing: half the smallest positive overlap between
/// consecutive members (zero when no consecutive members overlap).
pub fn glue_collar(family: &ChainFamily<'_>) -> Result<Rational, ChainError> {
    let ivs = segment_members(family)?;
    Ok(ivs
        .windows(2)
        .map(|w| overlap_length(w[0], w[1]))
        .filter(|l| *l > Rational::zero())
        .min()
        .map(|l| l / 2)
        .unwrap_or_else(Rational::zero))
}

fn segment_members<'a>(family: &'a ChainFamily<'_>) -> Result<Vec<&'a IntervalRegion>, ChainError> {
    family
        .members
        .iter()
        .map(|m| match m {
            Region::Intervals(iv) if iv.ambient() == Ambient::Segment => Ok(iv),
            _ => Err(ChainError::NotASegmentFamily),
        })
        .collect()
}

/// Maps a segment family onto the circle by identifying 0 with 1. Members
/// ending at a glue point continue across it by the family's collar
/// ([`glue_collar`]), so sets meeting at 0 and 1 become strongly near.
pub fn glue_to_circle(family: &ChainFamily<'_>) -> Result<ChainFamily<'static>, ChainError> {
    glue_to_circle_with_collar(family, glue_collar(family)?)
}

pub fn glue_to_circle_with_collar(
    family: &ChainFamily<'_>,
    collar: Rational,
) -> Result<ChainFamily<'static>, ChainError> {
    let ivs = segment_members(family)?;
    let members = ivs
        .iter()
        .map(|r| {
            let extended = r
                .intervals()
                .iter()
                .map(|iv| {
                    let lo = if iv.lo == Rational::zero() {
                        -collar
                    } else {
                        iv.lo
                    };
                    let hi = if iv.hi == Rational::one() {
                        Rational::one() + collar
                    } else {
                        iv.hi
                    };
                    Interval::new(lo, hi)
                })
                .collect();
            IntervalRegion::new(Ambient::Circle, extended).map(Region::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    ChainFamily::new(members)
}

/// A finite map between families of regions, given by its graph.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionMap<'k> {
    sources: Vec<Region<'k>>,
    images: Vec<Region<'k>>,
}

impl<'k> RegionMap<'k> {
    pub fn new(pairs: Vec<(Region<'k>, Region<'k>)>) -> Result<Self, ChainError> {
        if pairs.len() < 2 {
            return Err(ChainError::TooFewMembers(pairs.len()));
        }
        let (sources, images): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        check_shared_ambient(&sources)?;
        check_shared_ambient(&images)?;
        for i in 0..sources.len() {
            if sources[i + 1..].contains(&sources[i]) {
                return Err(ChainError::DuplicateSource);
            }
        }
        Ok(RegionMap { sources, images })
    }

    pub fn between(src: &ChainFamily<'k>, img: &ChainFamily<'k>) -> Result<Self, ChainError> {
        Self::new(
            src.members
                .iter()
                .cloned()
                .zip(img.members.iter().cloned())
                .collect(),
        )
    }

    pub fn sources(&self) -> &[Region<'k>] {
        &self.sources
    }

    pub fn images(&self) -> &[Region<'k>] {
        &self.images
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapMode {
    /// Near sources have near images.
    Continuity,
    /// Near sources iff near images.
    Equivalence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapViolation {
    pub i: usize,
    pub j: usize,
    pub source: Verdict,
    pub image: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MapReport {
    pub mode: MapMode,
    pub passed: bool,
    pub violations: Vec<MapViolation>,
}

/// Checks strong-nearness preservation over every pair of the supplied family.
pub fn verify_region_map(map: &RegionMap<'_>, mode: MapMode) -> MapReport {
    let n = map.sources.len();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let source = Strong
                .pair(&map.sources[i], &map.sources[j])
                .expect("shared ambient");
            let image = Strong
                .pair(&map.images[i], &map.images[j])
                .expect("shared ambient");
            let bad = match mode {
                MapMode::Continuity => source.is_near() && !image.is_near(),
                MapMode::Equivalence => source != image,
            };
            if bad {
                violations.push(MapViolation {
                    i,
                    j,
                    source,
                    image,
                });
            }
        }
    }
    MapReport {
        mode,
        passed: violations.is_empty(),
        violations,
    }
}

/// Serialized family: interval members as rational-string pairs, cell
/// members as cell-id lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub ambient: Ambient,
    pub members: Vec<MemberJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MemberJson {
    Intervals(Vec<Interval>),
    Cells(Vec<CellId>),
}

impl ChainFamily<'_> {
    pub fn to_json(&self) -> FamilyJson {
        FamilyJson {
            ambient: self.ambient(),
            members: self
                .members
                .iter()
                .map(|m| match m {
                    Region::Intervals(iv) => MemberJson::Intervals(iv.intervals().to_vec()),
                    Region::Cells(c) => MemberJson::Cells(c.cells().iter().copied().collect()),
                })
                .collect(),
        }
    }
}

impl<'k> ChainFamily<'k> {
    pub fn from_json(json: &FamilyJson, complex: Option<&'k Complex>) -> Result<Self, ChainError> {
        let members = json
            .members
            .iter()
            .map(|m| match (json.ambient, m) {
                (Ambient::Plane, MemberJson::Cells(ids)) => {
                    let k = complex.ok_or(ChainError::MissingComplex)?;
                    Ok(Region::cells(k, ids.iter().copied())?)
                }
                (Ambient::Segment | Ambient::Circle, MemberJson::Intervals(ivs)) => {
                    Ok(IntervalRegion::new(json.ambient, ivs.clone())?.into())
                }
                (_, MemberJson::Cells(ids)) if ids.is_empty() => {
                    Err(RegionError::EmptyRegion.into())
                }
                _ => Err(RegionError::AmbientMismatch.into()),
            })
            .collect::<Result<Vec<_>, ChainError>>()?;
        Self::new(members)
    }
}
