//! Per-axis and box-level verdicts, the Strong Kleene algebra, request
//! satisfaction, and deontic overlap.
//!
//! `Verdict3` is totally ordered Conflict < Unknown < Compatible; Kleene
//! conjunction is `min`, disjunction is `max`, negation swaps the definite
//! verdicts and fixes Unknown.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axis::{AxisConstraint, DenoteError};
use crate::interval::{Interval, IntervalError};
use crate::model::ExecutionContext;
use crate::numeric::{format_decimal, Rat};
use crate::profile::AxisOperand;

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub enum Verdict3 {
    Conflict,
    Unknown,
    Compatible,
}

pub fn kleene_and(a: Verdict3, b: Verdict3) -> Verdict3 {
    a.min(b)
}

pub fn kleene_or(a: Verdict3, b: Verdict3) -> Verdict3 {
    a.max(b)
}

pub fn kleene_not(a: Verdict3) -> Verdict3 {
    match a {
        Verdict3::Conflict => Verdict3::Compatible,
        Verdict3::Unknown => Verdict3::Unknown,
        Verdict3::Compatible => Verdict3::Conflict,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubsumptionVerdict {
    Confirmed,
    Refuted,
    Unknown,
}

#[derive(Debug, Error)]
pub enum VerdictError {
    #[error("constraints target different axes: {0} vs {1}")]
    AxisMismatch(String, String),
    #[error(transparent)]
    Denote(#[from] DenoteError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Intersection of a constraint set's denotations on one axis.
fn axis_interval(
    constraints: &[&AxisConstraint],
    axis: &AxisOperand,
) -> Result<Interval, VerdictError> {
    let mut acc = axis.domain.clone();
    for c in constraints {
        acc = acc.intersect(&c.denote()?)?;
    }
    Ok(acc)
}

pub fn axis_verdict(c1: &AxisConstraint, c2: &AxisConstraint) -> Result<Verdict3, VerdictError> {
    if c1.operand.iri != c2.operand.iri {
        return Err(VerdictError::AxisMismatch(
            c1.operand.iri.clone(),
            c2.operand.iri.clone(),
        ));
    }
    let overlap = c1.denote()?.intersect(&c2.denote()?)?;
    Ok(if overlap.is_empty() {
        Verdict3::Conflict
    } else {
        Verdict3::Compatible
    })
}

pub fn axis_subsumes(
    c1: &AxisConstraint,
    c2: &AxisConstraint,
) -> Result<SubsumptionVerdict, VerdictError> {
    if c1.operand.iri != c2.operand.iri {
        return Err(VerdictError::AxisMismatch(
            c1.operand.iri.clone(),
            c2.operand.iri.clone(),
        ));
    }
    Ok(if c1.denote()?.is_subset(&c2.denote()?)? {
        SubsumptionVerdict::Confirmed
    } else {
        SubsumptionVerdict::Refuted
    })
}

/// One axis of a box: its interval and whether any constraint targets it.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSlot {
    pub interval: Interval,
    pub constrained: bool,
}

/// Cartesian-product denotation: axis operand IRI to interval. Unconstrained
/// axes carry the full domain.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoxDenotation {
    pub axes: IndexMap<String, AxisSlot>,
}

impl BoxDenotation {
    pub fn contains(&self, point: &IndexMap<String, Rat>) -> Result<bool, VerdictError> {
        for (iri, slot) in &self.axes {
            match point.get(iri) {
                Some(v) => {
                    if !slot.interval.contains(v)? {
                        return Ok(false);
                    }
                }
                None => return Ok(false),
            }
        }
        Ok(true)
    }
}

pub fn box_denote(
    constraints: &[AxisConstraint],
    axes: &[&AxisOperand],
) -> Result<BoxDenotation, VerdictError> {
    let mut out = BoxDenotation::default();
    for axis in axes {
        let targeting: Vec<&AxisConstraint> = constraints
            .iter()
            .filter(|c| c.operand.iri == axis.iri)
            .collect();
        let slot = if targeting.is_empty() {
            AxisSlot {
                interval: axis.domain.clone(),
                constrained: false,
            }
        } else {
            AxisSlot {
                interval: axis_interval(&targeting, axis)?,
                constrained: true,
            }
        };
        out.axes.insert(axis.iri.clone(), slot);
    }
    Ok(out)
}

/// Round-trips a box back to `gteq lower / lteq upper` constraints per axis.
pub fn to_constraints(
    den: &BoxDenotation,
    axes: &[&AxisOperand],
) -> Vec<AxisConstraint> {
    use crate::interval::Edge;
    use crate::model::Operator;
    let mut out = Vec::new();
    for axis in axes {
        let Some(slot) = den.axes.get(&axis.iri) else { continue };
        if !slot.constrained {
            continue;
        }
        match slot.interval.lo() {
            Edge::Closed(v) => {
                out.push(AxisConstraint::new((*axis).clone(), Operator::Gteq, v.clone()))
            }
            Edge::Open(v) => {
                out.push(AxisConstraint::new((*axis).clone(), Operator::Gt, v.clone()))
            }
            Edge::Unbounded => {}
        }
        match slot.interval.hi() {
            Edge::Closed(v) => {
                out.push(AxisConstraint::new((*axis).clone(), Operator::Lteq, v.clone()))
            }
            Edge::Open(v) => {
                out.push(AxisConstraint::new((*axis).clone(), Operator::Lt, v.clone()))
            }
            Edge::Unbounded => {}
        }
    }
    out
}

/// Per-axis explanation attached to box verdicts.
#[derive(Debug, Clone, Serialize)]
pub struct AxisDetail {
    pub left: String,
    pub right: String,
    pub intersection: String,
    pub verdict: Verdict3,
}

pub type DetailMap = IndexMap<String, AxisDetail>;

/// Per-axis verdicts aggregated over a shared axis set. When several
/// constraints target one axis, the intersected interval is compared.
pub fn box_verdict(
    c1: &[AxisConstraint],
    c2: &[AxisConstraint],
    axes: &[&AxisOperand],
) -> Result<(Verdict3, DetailMap), VerdictError> {
    let b1 = box_denote(c1, axes)?;
    let b2 = box_denote(c2, axes)?;
    let mut details = DetailMap::new();
    let mut per_axis = Vec::new();
    for axis in axes {
        let s1 = &b1.axes[&axis.iri];
        let s2 = &b2.axes[&axis.iri];
        let overlap = s1.interval.intersect(&s2.interval)?;
        let v = if s1.constrained && s2.constrained {
            if overlap.is_empty() {
                Verdict3::Conflict
            } else {
                Verdict3::Compatible
            }
        } else {
            Verdict3::Unknown
        };
        per_axis.push(v);
        details.insert(
            axis.iri.clone(),
            AxisDetail {
                left: s1.interval.to_string(),
                right: s2.interval.to_string(),
                intersection: overlap.to_string(),
                verdict: v,
            },
        );
    }
    let aggregate = if per_axis.iter().any(|v| *v == Verdict3::Conflict) {
        Verdict3::Conflict
    } else if !per_axis.is_empty() && per_axis.iter().all(|v| *v == Verdict3::Compatible) {
        Verdict3::Compatible
    } else if per_axis.is_empty() {
        Verdict3::Compatible // vacuous: no axis to disagree on
    } else {
        Verdict3::Unknown
    };
    Ok((aggregate, details))
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsumptionDetail {
    pub left: String,
    pub right: String,
    pub verdict: SubsumptionVerdict,
}

pub type SubsumptionDetailMap = IndexMap<String, SubsumptionDetail>;

pub fn box_subsumes(
    c1: &[AxisConstraint],
    c2: &[AxisConstraint],
    axes: &[&AxisOperand],
) -> Result<(SubsumptionVerdict, SubsumptionDetailMap), VerdictError> {
    let b1 = box_denote(c1, axes)?;
    let b2 = box_denote(c2, axes)?;
    let mut details = SubsumptionDetailMap::new();
    let mut statuses = Vec::new();
    for axis in axes {
        let s1 = &b1.axes[&axis.iri];
        let s2 = &b2.axes[&axis.iri];
        let v = if s1.constrained && s2.constrained {
            if s1.interval.is_subset(&s2.interval)? {
                SubsumptionVerdict::Confirmed
            } else {
                SubsumptionVerdict::Refuted
            }
        } else {
            SubsumptionVerdict::Unknown
        };
        statuses.push(v);
        details.insert(
            axis.iri.clone(),
            SubsumptionDetail {
                left: s1.interval.to_string(),
                right: s2.interval.to_string(),
                verdict: v,
            },
        );
    }
    let aggregate = if statuses.iter().any(|s| *s == SubsumptionVerdict::Refuted) {
        SubsumptionVerdict::Refuted
    } else if !statuses.is_empty()
        && statuses.iter().all(|s| *s == SubsumptionVerdict::Confirmed)
    {
        SubsumptionVerdict::Confirmed
    } else if statuses.is_empty() {
        SubsumptionVerdict::Confirmed
    } else {
        SubsumptionVerdict::Unknown
    };
    Ok((aggregate, details))
}

#[derive(Debug, Clone, Serialize)]
pub struct RequestAxisDetail {
    pub interval: String,
    pub value: Option<String>,
    pub satisfied: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RequestOutcome {
    pub satisfied: bool,
    pub axes: IndexMap<String, RequestAxisDetail>,
    pub violations: Vec<String>,
}

/// Closed-world request evaluation: a constrained axis with no context value
/// is a violation; a supplied value on any axis must lie in the profile
/// domain.
pub fn request_satisfied(
    ctx: &ExecutionContext,
    constraints: &[AxisConstraint],
    axes: &[&AxisOperand],
) -> Result<RequestOutcome, VerdictError> {
    let den = box_denote(constraints, axes)?;
    let mut out = RequestOutcome {
        satisfied: true,
        axes: IndexMap::new(),
        violations: Vec::new(),
    };
    for axis in axes {
        let slot = &den.axes[&axis.iri];
        let value = ctx.values.get(&axis.iri);
        let (sat, note) = match value {
            Some(v) => {
                if !axis.domain.contains(v).unwrap_or(false) {
                    (false, Some(format!("value outside domain {}", axis.domain)))
                } else if slot.constrained {
                    match slot.interval.contains(v) {
                        Ok(true) => (true, None),
                        Ok(false) => (false, None),
                        Err(e) => (false, Some(e.to_string())),
                    }
                } else {
                    (true, None)
                }
            }
            None if slot.constrained => (false, Some("no value supplied".into())),
            None => (true, None),
        };
        if !sat {
            out.satisfied = false;
            out.violations.push(axis.iri.clone());
        }
        out.axes.insert(
            axis.iri.clone(),
            RequestAxisDetail {
                interval: slot.interval.to_string(),
                value: value.map(format_decimal),
                satisfied: sat,
                note,
            },
        );
    }
    Ok(out)
}

/// Deontic clash between a permission and a prohibition scope: overlap on
/// every constrained axis means Conflict, a definitely disjoint axis means
/// Compatible, an axis gap leaves Unknown.
pub fn deontic_overlap(
    permission: &BoxDenotation,
    prohibition: &BoxDenotation,
) -> Result<Verdict3, VerdictError> {
    let mut any_gap = false;
    for (iri, p_slot) in &permission.axes {
        let Some(q_slot) = prohibition.axes.get(iri) else {
            any_gap = true;
            continue;
        };
        if p_slot.constrained && q_slot.constrained {
            if p_slot.interval.intersect(&q_slot.interval)?.is_empty() {
                return Ok(Verdict3::Compatible);
            }
        } else {
            any_gap = true;
        }
    }
    Ok(if any_gap {
        Verdict3::Unknown
    } else {
        Verdict3::Conflict
    })
}
