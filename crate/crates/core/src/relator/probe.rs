//! Probe functions: feature extractors that map regions to descriptions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::RelatorError;
use crate::complex::{CellId, CellKind, Complex};
use crate::geometry::{triangle_area, triangle_perimeter, Point};
use crate::region::{CellRegion, Region, RegionError};

/// What a feature sees of one 2-cell.
#[derive(Debug, Clone, Copy)]
pub struct CellSample {
    pub corners: [Point; 3],
    pub area: f64,
    pub intensity: Option<f64>,
}

/// One coordinate of a description.
pub trait Feature: Send + Sync {
    fn name(&self) -> &'static str;

    fn needs_intensity(&self) -> bool {
        false
    }

    fn cell_value(&self, cell: &CellSample) -> Option<f64>;

    /// Combines per-cell `(area, value)` pairs into a region value.
    fn aggregate(&self, parts: &[(f64, f64)]) -> f64;
}

struct Area;
struct Perimeter;
struct MeanIntensity;
struct ConstantLabel;

fn sum(parts: &[(f64, f64)]) -> f64 {
    parts.iter().map(|&(_, v)| v).sum()
}

impl Feature for Area {
    fn name(&self) -> &'static str {
        "area"
    }
    fn cell_value(&self, cell: &CellSample) -> Option<f64> {
        Some(cell.area)
    }
    fn aggregate(&self, parts: &[(f64, f64)]) -> f64 {
        sum(parts)
    }
}

impl Feature for Perimeter {
    fn name(&self) -> &'static str {
        "perimeter"
    }
    fn cell_value(&self, cell: &CellSample) -> Option<f64> {
        Some(triangle_perimeter(cell.corners))
    }
    fn aggregate(&self, parts: &[(f64, f64)]) -> f64 {
        sum(parts)
    }
}

impl Feature for MeanIntensity {
    fn name(&self) -> &'static str {
        "meanIntensity"
    }
    fn needs_intensity(&self) -> bool {
        true
    }
    fn cell_value(&self, cell: &CellSample) -> Option<f64> {
        cell.intensity
    }
    fn aggregate(&self, parts: &[(f64, f64)]) -> f64 {
        let total: f64 = parts.iter().map(|&(a, _)| a).sum();
        parts.iter().map(|&(a, v)| a * v).sum::<f64>() / total
    }
}

// Every region gets the same label.
impl Feature for ConstantLabel {
    fn name(&self) -> &'static str {
        "constantLabel"
    }
    fn cell_value(&self, _cell: &CellSample) -> Option<f64> {
        Some(1.0)
    }
    fn aggregate(&self, _parts: &[(f64, f64)]) -> f64 {
        1.0
    }
}

/// Name → feature table.
#[derive(Clone)]
pub struct FeatureRegistry {
    features: BTreeMap<&'static str, Arc<dyn Feature>>,
}

impl Default for FeatureRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl FeatureRegistry {
    pub fn empty() -> Self {
        FeatureRegistry {
            features: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Area));
        r.register(Arc::new(Perimeter));
        r.register(Arc::new(MeanIntensity));
        r.register(Arc::new(ConstantLabel));
        r
    }

    pub fn register(&mut self, feature: Arc<dyn Feature>) {
        self.features.insert(feature.name(), feature);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Feature>> {
        self.features.get(name).cloned()
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.features.keys().copied().collect()
    }
}

/// An ordered list of features.
#[derive(Clone)]
pub struct Probe {
    features: Vec<Arc<dyn Feature>>,
}

impl fmt::Debug for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.feature_names()).finish()
    }
}

impl Probe {
    pub fn new(features: Vec<Arc<dyn Feature>>) -> Result<Self, RelatorError> {
        if features.is_empty() {
            return Err(RelatorError::EmptyProbe);
        }
        Ok(Probe { features })
    }

    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self, RelatorError> {
        Self::from_names_in(names, &FeatureRegistry::with_builtins())
    }

    pub fn from_names_in<S: AsRef<str>>(
        names: &[S],
        registry: &FeatureRegistry,
    ) -> Result<Self, RelatorError> {
        let features = names
            .iter()
            .map(|n| {
                registry
                    .get(n.as_ref())
                    .ok_or_else(|| RelatorError::UnknownFeature(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(features)
    }

    pub fn feature_names(&self) -> Vec<&'static str> {
        self.features.iter().map(|f| f.name()).collect()
    }

    pub fn needs_intensity(&self) -> bool {
        self.features.iter().any(|f| f.needs_intensity())
    }
}

/// `{"features": [...], "eps": 10.0}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeConfig {
    pub features: Vec<String>,
    #[serde(default)]
    pub eps: f64,
}

impl ProbeConfig {
    pub fn probe(&self) -> Result<Probe, RelatorError> {
        Probe::from_names(&self.features)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Description {
    pub values: Vec<f64>,
}

pub fn chebyshev(a: &Description, b: &Description) -> f64 {
    a.values
        .iter()
        .zip(&b.values)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A complex paired with a probe; per-triangle descriptions are computed once.
#[derive(Debug, Clone)]
pub struct DescriptiveComplex {
    base: Complex,
    probe: Probe,
    samples: BTreeMap<CellId, CellSample>,
    cache: BTreeMap<CellId, Description>,
}

impl DescriptiveComplex {
    /// `intensities` maps triangle ids to a scalar field; required when the
    /// probe uses `meanIntensity`.
    pub fn new(
        base: Complex,
        probe: Probe,
        intensities: Option<&BTreeMap<CellId, f64>>,
    ) -> Result<Self, RelatorError> {
        let mut samples = BTreeMap::new();
        let mut cache = BTreeMap::new();
        for t in base.triangle_ids() {
            let corners = base.triangle_points(t);
            let intensity = intensities.and_then(|m| m.get(&t).copied());
            if probe.needs_intensity() && intensity.is_none() {
                return Err(RelatorError::MissingIntensity(t));
            }
            let sample = CellSample {
                corners,
                area: triangle_area(corners),
                intensity,
            };
            let values = probe
                .features
                .iter()
                .map(|f| {
                    f.cell_value(&sample)
                        .ok_or(RelatorError::MissingIntensity(t))
                })
                .collect::<Result<Vec<_>, _>>()?;
            samples.insert(t, sample);
            cache.insert(t, Description { values });
        }
        Ok(DescriptiveComplex {
            base,
            probe,
            samples,
            cache,
        })
    }

    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn probe(&self) -> &Probe {
        &self.probe
    }

    pub fn cell_description(&self, t: CellId) -> Option<&Description> {
        self.cache.get(&t)
    }

    fn aggregate(&self, triangles: &[CellId]) -> Description {
        let values = self
            .probe
            .features
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let parts: Vec<(f64, f64)> = triangles
                    .iter()
                    .map(|t| (self.samples[t].area, self.cache[t].values[i]))
                    .collect();
                f.aggregate(&parts)
            })
            .collect();
        Description { values }
    }
}

/// Aggregate description of a region: extensive features are summed over the
/// member 2-cells, intensity is area-weighted.
pub fn describe(region: &Region<'_>, dk: &DescriptiveComplex) -> Result<Description, RelatorError> {
    let cells = region.as_cells().ok_or(RegionError::NotACellRegion)?;
    if !std::ptr::eq(cells.complex(), dk.base()) && cells.complex() != dk.base() {
        return Err(RegionError::AmbientMismatch.into());
    }
    let tris: Vec<CellId> = cells.triangles().collect();
    if tris.is_empty() {
        return Err(RelatorError::NoTwoCells);
    }
    Ok(dk.aggregate(&tris))
}

/// Maximal edge-connected groups of triangles whose descriptions stay within
/// `eps` of the group's seed triangle. Seeds are taken in ascending id order.
pub fn descriptive_holes<'d>(
    dk: &'d DescriptiveComplex,
    eps: f64,
) -> Result<Vec<CellRegion<'d>>, RelatorError> {
    if eps.is_nan() || eps < 0.0 {
        return Err(RelatorError::InvalidEps(eps));
    }
    let k = dk.base();
    let mut assigned: BTreeSet<CellId> = BTreeSet::new();
    let mut holes = Vec::new();
    for seed in k.triangle_ids() {
        if assigned.contains(&seed) {
            continue;
        }
        let seed_desc = &dk.cache[&seed];
        let mut members = BTreeSet::from([seed]);
        assigned.insert(seed);
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            for &e in k.faces(t).iter().filter(|&&f| k.kind(f) == CellKind::Edge) {
                for &n in k.cofaces(e) {
                    if n != t
                        && !assigned.contains(&n)
                        && chebyshev(&dk.cache[&n], seed_desc) <= eps
                    {
                        assigned.insert(n);
                        members.insert(n);
                        queue.push_back(n);
                    }
                }
            }
        }
        holes.push(CellRegion::new(k, members)?);
    }
    Ok(holes)
}
