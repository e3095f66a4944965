//! Registry of the 15 axis-specific left operands, their value domains, the
//! base-operand decomposition map, and right-operand bound validation.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{Density, Edge, Interval};
use crate::numeric::{format_decimal, rat, Rat};

pub const ODRL: &str = "http://www.w3.org/ns/odrl/2/";
pub const OAX: &str = "http://w3id.org/odrl/spatial-axis#";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Width,
    Height,
    Depth,
    X,
    Y,
    Z,
    Longitude,
    Latitude,
    Altitude,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisOperand {
    pub iri: String,
    /// Parent dimensional operand; recorded as a specialisation link, never
    /// consulted when evaluating base-operand constraints.
    pub base: String,
    pub axis: Axis,
    pub domain: Interval,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("{0} is not a dimensional left operand")]
    NotDimensional(String),
    #[error("unknown axis operand {0}")]
    UnknownOperand(String),
}

/// Bound-violation report from right-operand validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundViolation {
    pub operand: String,
    pub value: Rat,
    pub domain: Interval,
}

impl fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "value {} outside domain {} of {}",
            format_decimal(&self.value),
            self.domain,
            self.operand
        )
    }
}

/// The five dimensional base operands, in profile order.
pub const DIMENSIONAL_BASES: [&str; 5] = [
    "absoluteSize",
    "relativeSize",
    "absoluteSpatialPosition",
    "relativeSpatialPosition",
    "spatialCoordinates",
];

pub fn is_dimensional_base(iri: &str) -> bool {
    iri.strip_prefix(ODRL)
        .map(|name| DIMENSIONAL_BASES.contains(&name))
        .unwrap_or(false)
}

fn open0_inf() -> Interval {
    Interval::new(Edge::Open(rat(0)), Edge::Unbounded, Density::Dense)
}

fn open0_100() -> Interval {
    Interval::new(Edge::Open(rat(0)), Edge::Closed(rat(100)), Density::Dense)
}

fn closed(lo: i64, hi: i64) -> Interval {
    Interval::new(Edge::Closed(rat(lo)), Edge::Closed(rat(hi)), Density::Dense)
}

#[derive(Debug, Clone)]
pub struct AxisRegistry {
    operands: Vec<AxisOperand>,
    index: HashMap<String, usize>,
}

impl AxisRegistry {
    /// The standard ODRL Spatial Axis Profile: 15 operands, 3 per base.
    pub fn standard() -> AxisRegistry {
        use Axis::*;
        let mut entries: Vec<(&str, String, Axis, Interval)> = Vec::new();
        for (suffix, axis) in [("Width", Width), ("Height", Height), ("Depth", Depth)] {
            entries.push(("absoluteSize", format!("absoluteSize{suffix}"), axis, open0_inf()));
            entries.push(("relativeSize", format!("relativeSize{suffix}"), axis, open0_100()));
        }
        for (suffix, axis) in [("X", X), ("Y", Y), ("Z", Z)] {
            entries.push((
                "absoluteSpatialPosition",
                format!("absoluteSpatialPosition{suffix}"),
                axis,
                Interval::full(Density::Dense),
            ));
            entries.push((
                "relativeSpatialPosition",
                format!("relativeSpatialPosition{suffix}"),
                axis,
                closed(0, 100),
            ));
        }
        entries.push((
            "spatialCoordinates",
            "spatialCoordinatesLongitude".into(),
            Longitude,
            closed(-180, 180),
        ));
        entries.push((
            "spatialCoordinates",
            "spatialCoordinatesLatitude".into(),
            Latitude,
            closed(-90, 90),
        ));
        entries.push((
            "spatialCoordinates",
            "spatialCoordinatesAltitude".into(),
            Altitude,
            Interval::full(Density::Dense),
        ));
        // Keep the profile table's base-major ordering.
        let base_rank = |b: &str| DIMENSIONAL_BASES.iter().position(|x| *x == b).unwrap();
        entries.sort_by_key(|(base, _, _, _)| base_rank(base));

        let operands: Vec<AxisOperand> = entries
            .into_iter()
            .map(|(base, name, axis, domain)| AxisOperand {
                iri: format!("{OAX}{name}"),
                base: format!("{ODRL}{base}"),
                axis,
                domain,
            })
            .collect();
        let index = operands
            .iter()
            .enumerate()
            .map(|(i, op)| (op.iri.clone(), i))
            .collect();
        AxisRegistry { operands, index }
    }

    /// A registry with no operands; evaluation treats every IRI as
    /// unrecognised, which is the profile-unaware baseline.
    pub fn empty() -> AxisRegistry {
        AxisRegistry {
            operands: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn lookup(&self, iri: &str) -> Option<&AxisOperand> {
        self.index.get(iri).map(|&i| &self.operands[i])
    }

    pub fn operands(&self) -> &[AxisOperand] {
        &self.operands
    }

    pub fn len(&self) -> usize {
        self.operands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.operands.is_empty()
    }

    /// The axis operands replacing a dimensional base operand.
    pub fn decompose(&self, base: &str) -> Result<Vec<&AxisOperand>, ProfileError> {
        if !is_dimensional_base(base) {
            return Err(ProfileError::NotDimensional(base.to_string()));
        }
        Ok(self
            .operands
            .iter()
            .filter(|op| op.base == base)
            .collect())
    }

    /// Marks an axis as integer-discrete (pixel use cases). The domain
    /// endpoints are re-normalised under the new density.
    pub fn set_density(&mut self, iri: &str, density: Density) -> Result<(), ProfileError> {
        let idx = *self
            .index
            .get(iri)
            .ok_or_else(|| ProfileError::UnknownOperand(iri.to_string()))?;
        let op = &mut self.operands[idx];
        op.domain = Interval::new(op.domain.lo().clone(), op.domain.hi().clone(), density);
        Ok(())
    }

    /// Registry as a serialisable table for `oax profile --dump`.
    pub fn dump(&self) -> Vec<ProfileRow> {
        self.operands
            .iter()
            .map(|op| ProfileRow {
                iri: crate::model::compact(&op.iri),
                base: crate::model::compact(&op.base),
                axis: op.axis,
                domain: op.domain.to_string(),
                density: op.domain.density(),
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileRow {
    pub iri: String,
    pub base: String,
    pub axis: Axis,
    pub domain: String,
    pub density: Density,
}

/// SHACL-equivalent bound check: is `v` inside the operand's domain?
pub fn validate_right_operand(op: &AxisOperand, v: &Rat) -> Result<(), BoundViolation> {
    let inside = match op.domain.density() {
        Density::Dense => op.domain.contains(v).expect("dense contains is total"),
        Density::IntegerDiscrete => {
            // A non-integral bound on a discrete axis is itself a violation.
            op.domain.contains(v).unwrap_or(false)
        }
    };
    if inside {
        Ok(())
    } else {
        Err(BoundViolation {
            operand: op.iri.clone(),
            value: v.clone(),
            domain: op.domain.clone(),
        })
    }
}
