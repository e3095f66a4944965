//! Exact interval algebra over totally ordered axis domains.
//!
//! Intervals carry open/closed endpoints (possibly infinite) and a density.
//! Integer-discrete intervals are normalised to closed finite endpoints on
//! construction, so `(5, 10]` over the integers is stored as `[6, 10]`.
//! Every empty interval collapses to one canonical representative per
//! density, which makes structural equality semantic equality.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::BigInt;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{format_decimal, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Density {
    Dense,
    IntegerDiscrete,
}

/// One side of an interval. Infinite endpoints are always open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Edge {
    Unbounded,
    Open(Rat),
    Closed(Rat),
}

impl Edge {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Edge::Unbounded => None,
            Edge::Open(v) | Edge::Closed(v) => Some(v),
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self, Edge::Closed(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("density mismatch between intervals")]
    DensityMismatch,
    #[error("non-integral value {0} on an integer-discrete axis")]
    NonIntegral(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: Edge,
    hi: Edge,
    density: Density,
}

fn floor(v: &Rat) -> Rat {
    v.floor()
}

fn ceil(v: &Rat) -> Rat {
    v.ceil()
}

fn one() -> Rat {
    Rat::from_integer(BigInt::one())
}

/// Orders lower edges by how late the interval starts.
fn cmp_lower(a: &Edge, b: &Edge) -> Ordering {
    match (a, b) {
        (Edge::Unbounded, Edge::Unbounded) => Ordering::Equal,
        (Edge::Unbounded, _) => Ordering::Less,
        (_, Edge::Unbounded) => Ordering::Greater,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            xv.cmp(yv).then_with(|| match (x.is_closed(), y.is_closed()) {
                (true, false) => Ordering::Less, // closed starts earlier
                (false, true) => Ordering::Greater,
                _ => Ordering::Equal,
            })
        }
    }
}

/// Orders upper edges by how early the interval ends.
fn cmp_upper(a: &Edge, b: &Edge) -> Ordering {
    match (a, b) {
        (Edge::Unbounded, Edge::Unbounded) => Ordering::Equal,
        (Edge::Unbounded, _) => Ordering::Greater,
        (_, Edge::Unbounded) => Ordering::Less,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            xv.cmp(yv).then_with(|| match (x.is_closed(), y.is_closed()) {
                (true, false) => Ordering::Greater, // closed ends later
                (false, true) => Ordering::Less,
                _ => Ordering::Equal,
            })
        }
    }
}

impl Interval {
    /// Builds a canonical interval. Discrete endpoints are tightened to
    /// closed integers; empty results collapse to the canonical empty.
    pub fn new(lo: Edge, hi: Edge, density: Density) -> Interval {
        let (lo, hi) = match density {
            Density::Dense => (lo, hi),
            Density::IntegerDiscrete => {
                let lo = match lo {
                    Edge::Unbounded => Edge::Unbounded,
                    // smallest integer strictly above v
                    Edge::Open(v) => Edge::Closed(floor(&v) + one()),
                    Edge::Closed(v) => Edge::Closed(ceil(&v)),
                };
                let hi = match hi {
                    Edge::Unbounded => Edge::Unbounded,
                    // largest integer strictly below v
                    Edge::Open(v) => Edge::Closed(ceil(&v) - one()),
                    Edge::Closed(v) => Edge::Closed(floor(&v)),
                };
                (lo, hi)
            }
        };
        let iv = Interval { lo, hi, density };
        if iv.raw_is_empty() {
            Interval::empty(density)
        } else {
            iv
        }
    }

    /// Canonical empty interval: `(0, 0)` dense, `[1, 0]` discrete.
    pub fn empty(density: Density) -> Interval {
        match density {
            Density::Dense => Interval {
                lo: Edge::Open(Rat::zero()),
                hi: Edge::Open(Rat::zero()),
                density,
            },
            Density::IntegerDiscrete => Interval {
                lo: Edge::Closed(one()),
                hi: Edge::Closed(Rat::zero()),
                density,
            },
        }
    }

    /// The whole axis: `(-inf, +inf)`.
    pub fn full(density: Density) -> Interval {
        Interval {
            lo: Edge::Unbounded,
            hi: Edge::Unbounded,
            density,
        }
    }

    pub fn lo(&self) -> &Edge {
        &self.lo
    }

    pub fn hi(&self) -> &Edge {
        &self.hi
    }

    pub fn density(&self) -> Density {
        self.density
    }

    fn raw_is_empty(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Edge::Unbounded, _) | (_, Edge::Unbounded) => false,
            (l, h) => {
                let (lv, hv) = (l.value().unwrap(), h.value().unwrap());
                match lv.cmp(hv) {
                    Ordering::Greater => true,
                    Ordering::Equal => match self.density {
                        // a degenerate point survives only if both ends are closed
                        Density::Dense => !(l.is_closed() && h.is_closed()),
                        Density::IntegerDiscrete => false,
                    },
                    Ordering::Less => false,
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        *self == Interval::empty(self.density)
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval, IntervalError> {
        if self.density != other.density {
            return Err(IntervalError::DensityMismatch);
        }
        let lo = if cmp_lower(&self.lo, &other.lo) == Ordering::Less {
            other.lo.clone()
        } else {
            self.lo.clone()
        };
        let hi = if cmp_upper(&self.hi, &other.hi) == Ordering::Greater {
            other.hi.clone()
        } else {
            self.hi.clone()
        };
        Ok(Interval::new(lo, hi, self.density))
    }

    pub fn is_subset(&self, other: &Interval) -> Result<bool, IntervalError> {
        if self.density != other.density {
            return Err(IntervalError::DensityMismatch);
        }
        if self.is_empty() {
            return Ok(true);
        }
        if other.is_empty() {
            return Ok(false);
        }
        Ok(cmp_lower(&other.lo, &self.lo) != Ordering::Greater
            && cmp_upper(&self.hi, &other.hi) != Ordering::Greater)
    }

    pub fn contains(&self, v: &Rat) -> Result<bool, IntervalError> {
        if self.density == Density::IntegerDiscrete && !v.is_integer() {
            return Err(IntervalError::NonIntegral(format_decimal(v)));
        }
        let above_lo = match &self.lo {
            Edge::Unbounded => true,
            Edge::Open(l) => v > l,
            Edge::Closed(l) => v >= l,
        };
        let below_hi = match &self.hi {
            Edge::Unbounded => true,
            Edge::Open(h) => v < h,
            Edge::Closed(h) => v <= h,
        };
        Ok(above_lo && below_hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "EMPTY");
        }
        match &self.lo {
            Edge::Unbounded => write!(f, "(-inf")?,
            Edge::Open(v) => write!(f, "({}", format_decimal(v))?,
            Edge::Closed(v) => write!(f, "[{}", format_decimal(v))?,
        }
        match &self.hi {
            Edge::Unbounded => write!(f, ", +inf)"),
            Edge::Open(v) => write!(f, ", {})", format_decimal(v)),
            Edge::Closed(v) => write!(f, ", {}]", format_decimal(v)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn dense(lo: Edge, hi: Edge) -> Interval {
        Interval::new(lo, hi, Density::Dense)
    }

    fn disc(lo: Edge, hi: Edge) -> Interval {
        Interval::new(lo, hi, Density::IntegerDiscrete)
    }

    #[test]
    fn open_degenerate_is_empty() {
        assert!(dense(Edge::Open(rat(5)), Edge::Open(rat(5))).is_empty());
        assert!(dense(Edge::Open(rat(5)), Edge::Closed(rat(5))).is_empty());
        assert!(!dense(Edge::Closed(rat(5)), Edge::Closed(rat(5))).is_empty());
    }

    #[test]
    fn discrete_open_pair_normalises_empty() {
        // (5, 6) over the integers has no member
        assert!(disc(Edge::Open(rat(5)), Edge::Open(rat(6))).is_empty());
        // dense (5, 6) has witness 5.5
        assert!(!dense(Edge::Open(rat(5)), Edge::Open(rat(6))).is_empty());
    }

    #[test]
    fn discrete_normal_form() {
        let a = disc(Edge::Open(rat(5)), Edge::Unbounded);
        assert_eq!(a.lo(), &Edge::Closed(rat(6)));
        let b = disc(Edge::Unbounded, Edge::Open(rat(10)));
        assert_eq!(b.hi(), &Edge::Closed(rat(9)));
    }

    #[test]
    fn intersect_disjoint_and_nested() {
        let small = dense(Edge::Open(rat(0)), Edge::Closed(rat(600)));
        let high = dense(Edge::Closed(rat(800)), Edge::Unbounded);
        assert!(small.intersect(&high).unwrap().is_empty());

        let wide = dense(Edge::Open(rat(0)), Edge::Closed(rat(1200)));
        assert_eq!(small.intersect(&wide).unwrap(), small);
        assert!(small.is_subset(&wide).unwrap());
        assert!(!wide.is_subset(&small).unwrap());
    }

    #[test]
    fn intersect_tie_open_wins() {
        let a = dense(Edge::Open(rat(3)), Edge::Open(rat(9)));
        let b = dense(Edge::Closed(rat(3)), Edge::Closed(rat(9)));
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, a);
    }

    #[test]
    fn singleton_idempotent() {
        let p = dense(Edge::Closed(rat(5)), Edge::Closed(rat(5)));
        assert_eq!(p.intersect(&p).unwrap(), p);
    }

    #[test]
    fn empty_subset_of_everything() {
        let e = Interval::empty(Density::Dense);
        assert!(e.is_subset(&e).unwrap());
        assert!(e.is_subset(&Interval::full(Density::Dense)).unwrap());
        assert!(!Interval::full(Density::Dense).is_subset(&e).unwrap());
    }

    #[test]
    fn membership_respects_openness() {
        let i = dense(Edge::Open(rat(0)), Edge::Closed(rat(600)));
        assert!(!i.contains(&rat(1200)).unwrap());
        assert!(i.contains(&rat(400)).unwrap());
        assert!(i.contains(&rat(600)).unwrap());
        assert!(!i.contains(&rat(0)).unwrap());
        let o = dense(Edge::Open(rat(0)), Edge::Open(rat(600)));
        assert!(!o.contains(&rat(600)).unwrap());
    }

    #[test]
    fn discrete_membership_requires_integers() {
        let i = disc(Edge::Closed(rat(0)), Edge::Closed(rat(10)));
        assert!(i.contains(&rat(5)).unwrap());
        let half = Rat::new(1.into(), 2.into());
        assert!(matches!(
            i.contains(&half),
            Err(IntervalError::NonIntegral(_))
        ));
    }

    #[test]
    fn density_mismatch_errors() {
        let a = Interval::full(Density::Dense);
        let b = Interval::full(Density::IntegerDiscrete);
        assert!(a.intersect(&b).is_err());
        assert!(a.is_subset(&b).is_err());
    }

    #[test]
    fn display_grammar() {
        assert_eq!(
            dense(Edge::Open(rat(0)), Edge::Closed(rat(600))).to_string(),
            "(0, 600]"
        );
        assert_eq!(
            dense(Edge::Closed(rat(-90)), Edge::Closed(rat(90))).to_string(),
            "[-90, 90]"
        );
        assert_eq!(Interval::empty(Density::Dense).to_string(), "EMPTY");
        assert_eq!(Interval::full(Density::Dense).to_string(), "(-inf, +inf)");
    }
}
