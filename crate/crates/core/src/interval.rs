//! Unions of closed intervals with exact rational endpoints on the unit
//! segment `[0, 1]` or the circle `R / Z`.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::Ambient;
use crate::region::RegionError;

pub type Rational = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// Parses `"a/b"` or `"a"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let r: Rational = s.parse().ok()?;
    Some(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        Interval { lo, hi }
    }

    pub fn len(&self) -> Rational {
        self.hi - self.lo
    }

    fn meet(&self, o: &Interval) -> Option<Interval> {
        let lo = self.lo.max(o.lo);
        let hi = self.hi.min(o.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_string(), self.hi.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let p = |s: &str| {
            parse_rational(s).ok_or_else(|| serde::de::Error::custom(format!("bad rational '{s}'")))
        };
        Ok(Interval {
            lo: p(&lo)?,
            hi: p(&hi)?,
        })
    }
}

/// A nonempty union of closed intervals in a one-dimensional ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRegion {
    ambient: Ambient,
    intervals: Vec<Interval>,
}

impl IntervalRegion {
    pub fn new(ambient: Ambient, mut intervals: Vec<Interval>) -> Result<Self, RegionError> {
        if ambient == Ambient::Plane {
            return Err(RegionError::AmbientMismatch);
        }
        if intervals.is_empty() {
            return Err(RegionError::EmptyRegion);
        }
        for iv in &intervals {
            if iv.lo > iv.hi {
                return Err(RegionError::InvertedInterval(
                    iv.lo.to_string(),
                    iv.hi.to_string(),
                ));
            }
            if ambient == Ambient::Segment && (iv.lo < Rational::zero() || iv.hi > Rational::one())
            {
                return Err(RegionError::IntervalOutOfRange(
                    iv.lo.to_string(),
                    iv.hi.to_string(),
                ));
            }
        }
        intervals.sort();
        Ok(IntervalRegion { ambient, intervals })
    }

    pub fn segment(intervals: Vec<Interval>) -> Result<Self, RegionError> {
        Self::new(Ambient::Segment, intervals)
    }

    pub fn single(ambient: Ambient, lo: Rational, hi: Rational) -> Result<Self, RegionError> {
        Self::new(ambient, vec![Interval::new(lo, hi)])
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// Same intervals, read in another one-dimensional ambient.
    pub fn reinterpret(&self, ambient: Ambient) -> Result<Self, RegionError> {
        Self::new(ambient, self.intervals.clone())
    }

    /// Intervals reduced into `[0, 1]`; on the circle an arc crossing the
    /// glue point splits in two.
    pub fn pieces(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for iv in &self.intervals {
            if self.ambient != Ambient::Circle {
                out.push(*iv);
                continue;
            }
            if iv.len() >= Rational::one() {
                out.push(Interval::new(Rational::zero(), Rational::one()));
                continue;
            }
            let shift = iv.lo.floor();
            let lo = iv.lo - shift;
            let hi = iv.hi - shift;
            if hi <= Rational::one() {
                out.push(Interval::new(lo, hi));
            } else {
                out.push(Interval::new(lo, Rational::one()));
                out.push(Interval::new(Rational::zero(), hi - Rational::one()));
            }
        }
        out.sort();
        out
    }

    /// Closed pieces with the circle's glue point present at both 0 and 1.
    fn closed_pieces(&self) -> Vec<Interval> {
        let mut out = self.pieces();
        if self.ambient == Ambient::Circle {
            let (zero, one) = (Rational::zero(), Rational::one());
            let extra: Vec<Interval> = out
                .iter()
                .flat_map(|p| {
                    let mut v = Vec::new();
                    if p.hi == one {
                        v.push(Interval::new(zero, zero));
                    }
                    if p.lo == zero {
                        v.push(Interval::new(one, one));
                    }
                    v
                })
                .collect();
            out.extend(extra);
            out.sort();
            out.dedup();
        }
        out
    }

    /// Distance from coordinate `t` to the closed region (modulo 1 on the circle).
    pub fn distance_to(&self, t: f64) -> f64 {
        let to_f = |r: Rational| *r.numer() as f64 / *r.denom() as f64;
        let circle = self.ambient == Ambient::Circle;
        let t = if circle { t.rem_euclid(1.0) } else { t };
        self.pieces()
            .iter()
            .map(|p| {
                let (lo, hi) = (to_f(p.lo), to_f(p.hi));
                let d = if t < lo {
                    lo - t
                } else if t > hi {
                    t - hi
                } else {
                    0.0
                };
                if circle {
                    let wrap = if t < lo { t + 1.0 - hi } else { lo + 1.0 - t };
                    d.min(wrap.max(0.0))
                } else {
                    d
                }
            })
            .fold(f64::INFINITY, f64::min)
    }
}

/// Whether all regions share a common open sub-interval of positive length.
pub fn common_interior(regions: &[&IntervalRegion]) -> bool {
    let mut acc = regions[0].pieces();
    acc.retain(|p| p.lo < p.hi);
    for r in &regions[1..] {
        let next = r.pieces();
        acc = acc
            .iter()
            .flat_map(|a| next.iter().filter_map(move |b| a.meet(b)))
            .filter(|p| p.lo < p.hi)
            .collect();
        if acc.is_empty() {
            return false;
        }
    }
    !acc.is_empty()
}

/// Whether all closed regions share a common point.
pub fn common_closure(regions: &[&IntervalRegion]) -> bool {
    let mut acc = regions[0].closed_pieces();
    for r in &regions[1..] {
        let next = r.closed_pieces();
        acc = acc
            .iter()
            .flat_map(|a| next.iter().filter_map(move |b| a.meet(b)))
            .collect();
        if acc.is_empty() {
            return false;
        }
    }
    !acc.is_empty()
}
