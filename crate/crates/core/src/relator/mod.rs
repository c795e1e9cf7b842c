//! Hyperconnectedness relations and the registry that selects them by name.
//!
//! Each relation is an n-ary predicate on regions returning [`Verdict::Near`]
//! (0) or [`Verdict::Far`] (1). The built-in relators are:
//!
//! * `hnear` (Lodato): the closures of all arguments share a cell / point.
//! * `hsn` (strong): the interiors of all arguments share a 2-cell / a
//!   positive-length interval.
//! * `hdnear` (descriptive): the probe descriptions of all arguments lie
//!   within `eps` of each other in the Chebyshev metric.

mod probe;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::region::{common_closure, common_interior, Region, RegionError};

pub use probe::{
    chebyshev, describe, descriptive_holes, CellSample, Description, DescriptiveComplex, Feature,
    FeatureRegistry, Probe, ProbeConfig,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelatorError {
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error("probe needs an intensity field but the complex has none for cell {0}")]
    MissingIntensity(usize),
    #[error("unknown probe feature '{0}'")]
    UnknownFeature(String),
    #[error("unknown relator '{0}'")]
    UnknownRelator(String),
    #[error("probe has no features")]
    EmptyProbe,
    #[error("tolerance must be a non-negative number, got {0}")]
    InvalidEps(f64),
    #[error("region has no 2-cells to describe")]
    NoTwoCells,
    #[error("relator '{0}' needs a descriptive complex")]
    MissingContext(String),
}

/// Value of a hyperconnectedness relation: 0 = near, 1 = far.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Near,
    Far,
}

impl Verdict {
    pub fn value(self) -> u8 {
        match self {
            Verdict::Near => 0,
            Verdict::Far => 1,
        }
    }

    pub fn is_near(self) -> bool {
        self == Verdict::Near
    }

    pub fn near_if(cond: bool) -> Self {
        if cond {
            Verdict::Near
        } else {
            Verdict::Far
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.value())
    }
}

/// An n-ary nearness relation on regions.
pub trait Relator: Send + Sync {
    fn name(&self) -> &str;

    fn verdict(&self, regions: &[&Region<'_>]) -> Result<Verdict, RelatorError>;

    fn pair(&self, a: &Region<'_>, b: &Region<'_>) -> Result<Verdict, RelatorError> {
        self.verdict(&[a, b])
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Lodato;

impl Relator for Lodato {
    fn name(&self) -> &str {
        "hnear"
    }

    fn verdict(&self, regions: &[&Region<'_>]) -> Result<Verdict, RelatorError> {
        Ok(Verdict::near_if(common_closure(regions)?))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Strong;

impl Relator for Strong {
    fn name(&self) -> &str {
        "hsn"
    }

    fn verdict(&self, regions: &[&Region<'_>]) -> Result<Verdict, RelatorError> {
        Ok(Verdict::near_if(common_interior(regions)?))
    }
}

pub struct Descriptive<'d> {
    pub complex: &'d DescriptiveComplex,
    pub eps: f64,
}

impl Relator for Descriptive<'_> {
    fn name(&self) -> &str {
        "hdnear"
    }

    fn verdict(&self, regions: &[&Region<'_>]) -> Result<Verdict, RelatorError> {
        hdnear(regions, self.complex, self.eps)
    }
}

pub fn hnear(regions: &[&Region<'_>]) -> Result<Verdict, RelatorError> {
    Lodato.verdict(regions)
}

pub fn hsn(regions: &[&Region<'_>]) -> Result<Verdict, RelatorError> {
    Strong.verdict(regions)
}

/// Near iff the largest pairwise Chebyshev distance between the region
/// descriptions is at most `eps`.
pub fn hdnear(
    regions: &[&Region<'_>],
    dk: &DescriptiveComplex,
    eps: f64,
) -> Result<Verdict, RelatorError> {
    if eps.is_nan() || eps < 0.0 {
        return Err(RelatorError::InvalidEps(eps));
    }
    if regions.len() < 2 {
        return Err(RegionError::FewerThanTwoRegions.into());
    }
    let descs = regions
        .iter()
        .map(|r| describe(r, dk))
        .collect::<Result<Vec<_>, _>>()?;
    let spread = descs
        .iter()
        .enumerate()
        .flat_map(|(i, a)| descs[i + 1..].iter().map(move |b| chebyshev(a, b)))
        .fold(0.0, f64::max);
    Ok(Verdict::near_if(spread <= eps))
}

/// Inputs available to relator factories.
#[derive(Clone, Copy, Default)]
pub struct RelatorContext<'a> {
    pub descriptive: Option<&'a DescriptiveComplex>,
    pub eps: f64,
}

pub type RelatorFactory =
    for<'a> fn(&RelatorContext<'a>) -> Result<Box<dyn Relator + 'a>, RelatorError>;

/// Name → factory table for relators.
#[derive(Clone)]
pub struct RelatorRegistry {
    factories: BTreeMap<String, RelatorFactory>,
}

impl Default for RelatorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

impl RelatorRegistry {
    pub fn empty() -> Self {
        RelatorRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register("hnear", |_| Ok(Box::new(Lodato)));
        r.register("hsn", |_| Ok(Box::new(Strong)));
        r.register("hdnear", |ctx| {
            let complex = ctx
                .descriptive
                .ok_or_else(|| RelatorError::MissingContext("hdnear".into()))?;
            if ctx.eps.is_nan() || ctx.eps < 0.0 {
                return Err(RelatorError::InvalidEps(ctx.eps));
            }
            Ok(Box::new(Descriptive {
                complex,
                eps: ctx.eps,
            }))
        });
        r
    }

    pub fn register(&mut self, name: &str, factory: RelatorFactory) {
        self.factories.insert(name.to_string(), factory);
    }

    pub fn names(&self) -> Vec<&str> {
        self.factories.keys().map(String::as_str).collect()
    }

    pub fn build<'a>(
        &self,
        name: &str,
        ctx: &RelatorContext<'a>,
    ) -> Result<Box<dyn Relator + 'a>, RelatorError> {
        let f = self
            .factories
            .get(name)
            .ok_or_else(|| RelatorError::UnknownRelator(name.to_string()))?;
        f(ctx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Ambient;
    use crate::fixtures::{hex_fan, hex_fan_triangle, strip, strip_triangles};
    use crate::interval::{rat, IntervalRegion};

    #[test]
    fn lodato_examples() {
        let k = hex_fan();
        let all: Vec<Region> = (1..=6)
            .map(|i| Region::cells(&k, [hex_fan_triangle(&k, i)]).unwrap())
            .collect();
        let refs: Vec<&Region> = all.iter().collect();
        assert_eq!(hnear(&refs).unwrap(), Verdict::Near);

        let s = strip();
        let t = strip_triangles(&s);
        let r = |i: usize| Region::cells(&s, [t[i]]).unwrap();
        assert_eq!(hnear(&[&r(0), &r(1), &r(3)]).unwrap(), Verdict::Far);
        assert_eq!(hnear(&[&r(2), &r(2)]).unwrap(), Verdict::Near);
    }

    #[test]
    fn strong_examples() {
        let s = strip();
        let t = strip_triangles(&s);
        let r = |a: usize, b: usize| Region::cells(&s, [t[a], t[b]]).unwrap();
        assert_eq!(hsn(&[&r(0, 1), &r(1, 2), &r(1, 4)]).unwrap(), Verdict::Near);
        assert_eq!(hsn(&[&r(0, 1), &r(1, 2), &r(2, 3)]).unwrap(), Verdict::Far);
        let a: Region = IntervalRegion::single(Ambient::Segment, rat(0, 1), rat(11, 100))
            .unwrap()
            .into();
        let b: Region = IntervalRegion::single(Ambient::Segment, rat(9, 100), rat(21, 100))
            .unwrap()
            .into();
        assert_eq!(hsn(&[&a, &b]).unwrap(), Verdict::Near);
    }

    #[test]
    fn arity_checked() {
        let k = hex_fan();
        let a = Region::cells(&k, [0]).unwrap();
        assert_eq!(
            hnear(&[&a]),
            Err(RelatorError::Region(RegionError::FewerThanTwoRegions))
        );
    }

    #[test]
    fn registry_lookup() {
        let reg = RelatorRegistry::with_builtins();
        assert_eq!(reg.names(), vec!["hdnear", "hnear", "hsn"]);
        let ctx = RelatorContext::default();
        assert_eq!(reg.build("hsn", &ctx).unwrap().name(), "hsn");
        assert!(matches!(
            reg.build("nope", &ctx),
            Err(RelatorError::UnknownRelator(_))
        ));
        assert!(matches!(
            reg.build("hdnear", &ctx),
            Err(RelatorError::MissingContext(_))
        ));
    }

    #[test]
    fn verdict_serializes_as_digit() {
        assert_eq!(serde_json::to_string(&Verdict::Far).unwrap(), "1");
        assert_eq!(Verdict::Near.to_string(), "0");
    }
}
