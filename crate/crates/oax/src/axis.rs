//! Axis-specific constraints and their interval denotation.

use thiserror::Error;

use crate::interval::{Edge, Interval};
use crate::model::Operator;
use crate::numeric::Rat;
use crate::profile::AxisOperand;

#[derive(Debug, Clone, PartialEq)]
pub struct AxisConstraint {
    pub operand: AxisOperand,
    pub operator: Operator,
    pub value: Rat,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DenoteError {
    #[error("operator {0:?} is not a dimensional comparison operator")]
    UnsupportedOperator(String),
}

impl AxisConstraint {
    pub fn new(operand: AxisOperand, operator: Operator, value: Rat) -> AxisConstraint {
        AxisConstraint {
            operand,
            operator,
            value,
        }
    }

    /// The subset of the axis domain satisfying this constraint. The raw
    /// operator interval is clipped to the operand's domain, so denotations
    /// never exceed profile bounds; an out-of-domain right operand yields
    /// the empty interval rather than an error.
    pub fn denote(&self) -> Result<Interval, DenoteError> {
        let density = self.operand.domain.density();
        let v = self.value.clone();
        let raw = match self.operator {
            Operator::Eq => Interval::new(Edge::Closed(v.clone()), Edge::Closed(v), density),
            Operator::Lteq => Interval::new(Edge::Unbounded, Edge::Closed(v), density),
            Operator::Gteq => Interval::new(Edge::Closed(v), Edge::Unbounded, density),
            Operator::Lt => Interval::new(Edge::Unbounded, Edge::Open(v), density),
            Operator::Gt => Interval::new(Edge::Open(v), Edge::Unbounded, density),
            other => return Err(DenoteError::UnsupportedOperator(other.name().to_string())),
        };
        Ok(raw
            .intersect(&self.operand.domain)
            .expect("constraint density follows the operand domain"))
    }
}
