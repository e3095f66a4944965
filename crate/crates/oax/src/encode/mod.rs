//! Prover problem emission: TPTP-FOF and SMT-LIB encodings of
//! constraint-pair conjectures, the shared axiom files, and the mapping
//! from internal verdicts to expected prover statuses.

mod smt;
mod tptp;

pub use smt::SmtEncoder;
pub use tptp::TptpEncoder;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compose::{BranchSet, ComposeError};
use crate::model::Connective;
use crate::profile::AxisOperand;
use crate::verdict::{SubsumptionVerdict, Verdict3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Category {
    pub const ALL: [Category; 9] = [
        Category::A,
        Category::B,
        Category::C,
        Category::D,
        Category::E,
        Category::F,
        Category::G,
        Category::H,
        Category::I,
    ];

    pub fn dir(&self) -> &'static str {
        match self {
            Category::A => "a-single-axis",
            Category::B => "b-box-2d",
            Category::C => "c-box-3d",
            Category::D => "d-mixed-ops",
            Category::E => "e-cross-domain",
            Category::F => "f-difficulty",
            Category::G => "g-boundary",
            Category::H => "h-or",
            Category::I => "i-xone",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    ConflictCheck,
    SubsumptionCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    Verdict(Verdict3),
    Subsumption(SubsumptionVerdict),
}

impl Expected {
    pub fn label(&self) -> &'static str {
        match self {
            Expected::Verdict(Verdict3::Conflict) => "Conflict",
            Expected::Verdict(Verdict3::Unknown) => "Unknown",
            Expected::Verdict(Verdict3::Compatible) => "Compatible",
            Expected::Subsumption(SubsumptionVerdict::Confirmed) => "Confirmed",
            Expected::Subsumption(SubsumptionVerdict::Refuted) => "Refuted",
            Expected::Subsumption(SubsumptionVerdict::Unknown) => "Unknown",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SzsStatus {
    Theorem,
    CounterSatisfiable,
}

impl SzsStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::CounterSatisfiable => "CounterSatisfiable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmtStatus {
    Sat,
    Unsat,
}

impl SmtStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SmtStatus::Sat => "sat",
            SmtStatus::Unsat => "unsat",
        }
    }
}

#[derive(Debug, Error)]
pub enum EncodeError {
    #[error("axis unconstrained — not submitted (expected verdict Unknown)")]
    UnknownNotSubmittable,
    #[error("subsumption problems take single-branch sides")]
    BranchedSubsumption,
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Verdict(#[from] crate::verdict::VerdictError),
}

/// One benchmark problem: two constraint sides over a shared axis list and
/// the verdict the internal engine assigns, which fixes the statuses the
/// external provers must report.
#[derive(Debug, Clone)]
pub struct ProverProblem {
    pub id: String,
    pub category: Category,
    pub relation: Relation,
    pub connective: Connective,
    pub left: BranchSet,
    pub right: BranchSet,
    pub axes: Vec<AxisOperand>,
    pub expected: Expected,
}

impl ProverProblem {
    pub fn expected_statuses(&self) -> Result<(SzsStatus, SmtStatus), EncodeError> {
        expected_statuses(self.relation, self.expected)
    }

    pub(crate) fn axis_refs(&self) -> Vec<&AxisOperand> {
        self.axes.iter().collect()
    }
}

/// Maps an internal verdict to the (SZS, SMT) status pair an external
/// prover must report. Both Conflict and Compatible map to Theorem on the
/// FOF side because the conjecture polarity flips with the verdict: the
/// universal non-overlap statement is emitted when a conflict is expected
/// and the existential witness statement when compatibility is expected.
pub fn expected_statuses(
    relation: Relation,
    expected: Expected,
) -> Result<(SzsStatus, SmtStatus), EncodeError> {
    match (relation, expected) {
        (Relation::ConflictCheck, Expected::Verdict(Verdict3::Conflict)) => {
            Ok((SzsStatus::Theorem, SmtStatus::Unsat))
        }
        (Relation::ConflictCheck, Expected::Verdict(Verdict3::Compatible)) => {
            Ok((SzsStatus::Theorem, SmtStatus::Sat))
        }
        (Relation::SubsumptionCheck, Expected::Subsumption(SubsumptionVerdict::Confirmed)) => {
            Ok((SzsStatus::Theorem, SmtStatus::Unsat))
        }
        (Relation::SubsumptionCheck, Expected::Subsumption(SubsumptionVerdict::Refuted)) => {
            Ok((SzsStatus::CounterSatisfiable, SmtStatus::Sat))
        }
        _ => Err(EncodeError::UnknownNotSubmittable),
    }
}

pub const AXIS_AXIOM_FILE: &str = "AXIS000-0.ax";
pub const ORDER_AXIOM_FILE: &str = "ORD001-0.ax";

/// Order and membership theory: a strict total order, the derived weak
/// comparisons, and the interval-membership predicates (10 axioms).
pub fn axis_axioms() -> String {
    let axioms = [
        ("lt_irreflexive", "! [X] : ~ lt(X,X)"),
        (
            "lt_transitive",
            "! [X,Y,Z] : ((lt(X,Y) & lt(Y,Z)) => lt(X,Z))",
        ),
        ("lt_total", "! [X,Y] : (lt(X,Y) | lt(Y,X) | X = Y)"),
        ("leq_def", "! [X,Y] : (leq(X,Y) <=> (lt(X,Y) | X = Y))"),
        ("geq_def", "! [X,Y] : (geq(X,Y) <=> (lt(Y,X) | X = Y))"),
        ("in_eq_def", "! [X,V] : (in_eq(X,V) <=> X = V)"),
        ("in_lteq_def", "! [X,V] : (in_lteq(X,V) <=> leq(X,V))"),
        ("in_gteq_def", "! [X,V] : (in_gteq(X,V) <=> geq(X,V))"),
        ("in_lt_def", "! [X,V] : (in_lt(X,V) <=> lt(X,V))"),
        ("in_gt_def", "! [X,V] : (in_gt(X,V) <=> lt(V,X))"),
    ];
    render_axiom_file(
        AXIS_AXIOM_FILE,
        "Strict total order, weak comparisons, interval membership.",
        &axioms,
    )
}

/// Density and unboundedness witnesses for open and infinite interval
/// boundaries, via Skolem functions (3 axioms).
pub fn order_axioms() -> String {
    let axioms = [
        (
            "density",
            "! [A,B] : (lt(A,B) => (lt(A,between(A,B)) & lt(between(A,B),B)))",
        ),
        ("no_upper_bound", "! [A] : lt(A,above(A))"),
        ("no_lower_bound", "! [A] : lt(below(A),A)"),
    ];
    render_axiom_file(
        ORDER_AXIOM_FILE,
        "Density and unboundedness witnesses for open boundaries.",
        &axioms,
    )
}

fn render_axiom_file(name: &str, comment: &str, axioms: &[(&str, &str)]) -> String {
    let mut out = String::new();
    out.push_str(&format!("% {name} : {comment}\n"));
    for (label, body) in axioms {
        out.push_str(&format!("fof({label}, axiom, {body}).\n"));
    }
    out
}

/// Both axiom files as (file name, contents) pairs — exactly 13 axioms.
pub fn emit_axiom_files() -> Vec<(&'static str, String)> {
    vec![
        (AXIS_AXIOM_FILE, axis_axioms()),
        (ORDER_AXIOM_FILE, order_axioms()),
    ]
}

/// A target language behind a common interface, registered by name.
pub trait Encoder {
    fn name(&self) -> &'static str;
    fn extension(&self) -> &'static str;
    fn emit(&self, problem: &ProverProblem) -> Result<String, EncodeError>;
}

pub fn encoders() -> Vec<Box<dyn Encoder>> {
    vec![Box::new(TptpEncoder), Box::new(SmtEncoder)]
}

pub fn encoder_by_name(name: &str) -> Option<Box<dyn Encoder>> {
    encoders().into_iter().find(|e| e.name() == name)
}

pub fn emit_tptp(problem: &ProverProblem) -> Result<String, EncodeError> {
    TptpEncoder.emit(problem)
}

pub fn emit_smt(problem: &ProverProblem) -> Result<String, EncodeError> {
    SmtEncoder.emit(problem)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thirteen_axioms_across_two_files() {
        let files = emit_axiom_files();
        assert_eq!(files.len(), 2);
        let count: usize = files
            .iter()
            .map(|(_, text)| text.matches("fof(").count())
            .sum();
        assert_eq!(count, 13);
        let (_, ord) = &files[1];
        assert!(ord.contains("between(A,B)"));
        let (_, axis) = &files[0];
        assert!(axis.contains("lt_transitive"));
    }

    #[test]
    fn status_mapping_follows_the_correspondence_table() {
        use Expected::*;
        assert_eq!(
            expected_statuses(Relation::ConflictCheck, Verdict(Verdict3::Conflict)).unwrap(),
            (SzsStatus::Theorem, SmtStatus::Unsat)
        );
        assert_eq!(
            expected_statuses(Relation::ConflictCheck, Verdict(Verdict3::Compatible)).unwrap(),
            (SzsStatus::Theorem, SmtStatus::Sat)
        );
        assert_eq!(
            expected_statuses(
                Relation::SubsumptionCheck,
                Subsumption(SubsumptionVerdict::Confirmed)
            )
            .unwrap(),
            (SzsStatus::Theorem, SmtStatus::Unsat)
        );
        assert_eq!(
            expected_statuses(
                Relation::SubsumptionCheck,
                Subsumption(SubsumptionVerdict::Refuted)
            )
            .unwrap(),
            (SzsStatus::CounterSatisfiable, SmtStatus::Sat)
        );
        assert!(matches!(
            expected_statuses(Relation::ConflictCheck, Verdict(Verdict3::Unknown)),
            Err(EncodeError::UnknownNotSubmittable)
        ));
    }
}
