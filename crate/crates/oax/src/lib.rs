//! Deterministic reasoning over spatial ODRL constraints.
//!
//! The crate decomposes ODRL's dimensional left operands into axis-specific
//! operands, evaluates conflict/subsumption/request-satisfaction through an
//! exact interval algebra with Strong Kleene three-valued composition, lints
//! policies for contradictions and redundancy, and regenerates a dual-encoded
//! (TPTP FOF + SMT-LIB) benchmark suite with external prover concordance
//! checking.

pub mod axis;
pub mod bench;
pub mod compose;
pub mod config;
pub mod encode;
pub mod engine;
pub mod fsutil;
pub mod interval;
pub mod lint;
pub mod model;
pub mod numeric;
pub mod profile;
pub mod verdict;

pub use axis::AxisConstraint;
pub use interval::{Density, Edge, Interval};
pub use model::{Constraint, ExecutionContext, LogicalConstraint, Policy, Rule};
pub use profile::{AxisOperand, AxisRegistry};
pub use verdict::{SubsumptionVerdict, Verdict3};
