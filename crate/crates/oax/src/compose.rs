//! Cross-policy verdicts for or/xone branch sets and cross-domain
//! aggregation over heterogeneous per-operand verdicts.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axis::AxisConstraint;
use crate::profile::AxisOperand;
use crate::verdict::{box_verdict, kleene_and, Verdict3, VerdictError};

/// Branches of a disjunctive constraint; each branch is an implicit-And box.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchSet {
    pub branches: Vec<Vec<AxisConstraint>>,
}

impl BranchSet {
    pub fn single(constraints: Vec<AxisConstraint>) -> BranchSet {
        BranchSet {
            branches: vec![constraints],
        }
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerdictSource {
    Dimensional,
    #[serde(rename = "concept")]
    ConceptValued,
    Scalar,
}

/// Externally supplied (or dimensional) per-operand verdict entering the
/// cross-domain composition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledVerdict {
    pub operand: String,
    pub source: VerdictSource,
    pub verdict: Verdict3,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Error)]
pub enum ComposeError {
    #[error("empty branch set")]
    EmptyBranchSet,
    #[error("xone needs at least two branches on each side, got {0} vs {1}")]
    XoneArity(usize, usize),
    #[error("empty verdict sequence")]
    EmptyVerdicts,
    #[error(transparent)]
    Verdict(#[from] VerdictError),
}

/// All |B1| x |B2| pairwise box verdicts, row-major.
#[derive(Debug, Clone, Serialize)]
pub struct PairMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Verdict3>,
}

impl PairMatrix {
    pub fn get(&self, i: usize, j: usize) -> Verdict3 {
        self.entries[i * self.cols + j]
    }
}

fn pair_matrix(
    b1: &BranchSet,
    b2: &BranchSet,
    axes: &[&AxisOperand],
) -> Result<PairMatrix, ComposeError> {
    if b1.is_empty() || b2.is_empty() {
        return Err(ComposeError::EmptyBranchSet);
    }
    let mut entries = Vec::with_capacity(b1.len() * b2.len());
    for left in &b1.branches {
        for right in &b2.branches {
            entries.push(box_verdict(left, right, axes)?.0);
        }
    }
    Ok(PairMatrix {
        rows: b1.len(),
        cols: b2.len(),
        entries,
    })
}

fn or_aggregate(matrix: &PairMatrix) -> Verdict3 {
    if matrix.entries.iter().any(|v| *v == Verdict3::Compatible) {
        Verdict3::Compatible
    } else if matrix.entries.iter().all(|v| *v == Verdict3::Conflict) {
        Verdict3::Conflict
    } else {
        Verdict3::Unknown
    }
}

fn xone_aggregate(matrix: &PairMatrix) -> Verdict3 {
    let compatible = matrix
        .entries
        .iter()
        .filter(|v| **v == Verdict3::Compatible)
        .count();
    let conflict = matrix
        .entries
        .iter()
        .filter(|v| **v == Verdict3::Conflict)
        .count();
    if conflict == matrix.entries.len() {
        Verdict3::Conflict
    } else if compatible == 1 && conflict == matrix.entries.len() - 1 {
        Verdict3::Compatible
    } else {
        Verdict3::Unknown
    }
}

pub fn or_verdict(
    b1: &BranchSet,
    b2: &BranchSet,
    axes: &[&AxisOperand],
) -> Result<(Verdict3, PairMatrix), ComposeError> {
    let matrix = pair_matrix(b1, b2, axes)?;
    Ok((or_aggregate(&matrix), matrix))
}

pub fn xone_verdict(
    b1: &BranchSet,
    b2: &BranchSet,
    axes: &[&AxisOperand],
) -> Result<(Verdict3, PairMatrix), ComposeError> {
    if b1.len() < 2 || b2.len() < 2 {
        return Err(ComposeError::XoneArity(b1.len(), b2.len()));
    }
    let matrix = pair_matrix(b1, b2, axes)?;
    Ok((xone_aggregate(&matrix), matrix))
}

/// Internal relaxed entry point for policy evaluation, where a declared
/// xone may face a plain single-branch opponent.
pub fn connective_verdict(
    connective: crate::model::Connective,
    b1: &BranchSet,
    b2: &BranchSet,
    axes: &[&AxisOperand],
) -> Result<(Verdict3, PairMatrix), ComposeError> {
    let matrix = pair_matrix(b1, b2, axes)?;
    let v = match connective {
        crate::model::Connective::And | crate::model::Connective::Or => or_aggregate(&matrix),
        crate::model::Connective::Xone => xone_aggregate(&matrix),
    };
    Ok((v, matrix))
}

/// Kleene-and fold over per-operand verdicts.
pub fn cross_domain_verdict(verdicts: &[LabeledVerdict]) -> Result<Verdict3, ComposeError> {
    if verdicts.is_empty() {
        return Err(ComposeError::EmptyVerdicts);
    }
    Ok(verdicts
        .iter()
        .map(|lv| lv.verdict)
        .fold(Verdict3::Compatible, kleene_and))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Operator;
    use crate::numeric::rat;
    use crate::profile::{AxisRegistry, OAX};

    fn reg() -> AxisRegistry {
        AxisRegistry::standard()
    }

    fn w(r: &AxisRegistry, operator: Operator, v: i64) -> AxisConstraint {
        AxisConstraint::new(
            r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap().clone(),
            operator,
            rat(v),
        )
    }

    fn h(r: &AxisRegistry, operator: Operator, v: i64) -> AxisConstraint {
        AxisConstraint::new(
            r.lookup(&format!("{OAX}absoluteSizeHeight")).unwrap().clone(),
            operator,
            rat(v),
        )
    }

    #[test]
    fn or_finds_the_second_pair() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let b1 = BranchSet::single(vec![w(&r, Operator::Lteq, 600)]);
        let b2 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 700), w(&r, Operator::Lteq, 800)],
                vec![w(&r, Operator::Gteq, 100), w(&r, Operator::Lteq, 200)],
            ],
        };
        let (v, m) = or_verdict(&b1, &b2, &axes).unwrap();
        assert_eq!(v, Verdict3::Compatible);
        assert_eq!(m.get(0, 0), Verdict3::Conflict);
        assert_eq!(m.get(0, 1), Verdict3::Compatible);
    }

    #[test]
    fn or_all_disjoint_is_conflict() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let b1 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Lteq, 100)],
                vec![w(&r, Operator::Gteq, 900)],
            ],
        };
        let b2 = BranchSet {
            branches: vec![vec![w(&r, Operator::Gteq, 200), w(&r, Operator::Lteq, 300)]],
        };
        assert_eq!(or_verdict(&b1, &b2, &axes).unwrap().0, Verdict3::Conflict);
    }

    #[test]
    fn or_axis_gap_without_witness_is_unknown() {
        let r = reg();
        let axes: Vec<&crate::profile::AxisOperand> = vec![
            r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap(),
            r.lookup(&format!("{OAX}absoluteSizeHeight")).unwrap(),
        ];
        // pair constrains only width compatibly on one branch; no pair Compatible
        let b1 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Lteq, 100), h(&r, Operator::Lteq, 100)],
                vec![w(&r, Operator::Lteq, 50)],
            ],
        };
        let b2 = BranchSet::single(vec![
            w(&r, Operator::Gteq, 10),
            w(&r, Operator::Lteq, 60),
            h(&r, Operator::Gteq, 200),
        ]);
        let (v, _) = or_verdict(&b1, &b2, &axes).unwrap();
        assert_eq!(v, Verdict3::Unknown);
    }

    #[test]
    fn xone_exactly_one_overlap() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let b1 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 100), w(&r, Operator::Lteq, 200)],
                vec![w(&r, Operator::Gteq, 500), w(&r, Operator::Lteq, 600)],
            ],
        };
        let b2 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 150), w(&r, Operator::Lteq, 180)],
                vec![w(&r, Operator::Gteq, 900), w(&r, Operator::Lteq, 950)],
            ],
        };
        assert_eq!(xone_verdict(&b1, &b2, &axes).unwrap().0, Verdict3::Compatible);
    }

    #[test]
    fn xone_two_overlaps_is_unknown() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let wide = vec![w(&r, Operator::Gteq, 100), w(&r, Operator::Lteq, 900)];
        let b1 = BranchSet {
            branches: vec![wide.clone(), vec![w(&r, Operator::Gteq, 950)]],
        };
        let b2 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 150), w(&r, Operator::Lteq, 180)],
                vec![w(&r, Operator::Gteq, 500), w(&r, Operator::Lteq, 550)],
            ],
        };
        assert_eq!(xone_verdict(&b1, &b2, &axes).unwrap().0, Verdict3::Unknown);
    }

    #[test]
    fn xone_all_disjoint_is_conflict() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let b1 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 100), w(&r, Operator::Lteq, 200)],
                vec![w(&r, Operator::Gteq, 300), w(&r, Operator::Lteq, 400)],
            ],
        };
        let b2 = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Gteq, 500), w(&r, Operator::Lteq, 600)],
                vec![w(&r, Operator::Gteq, 700), w(&r, Operator::Lteq, 800)],
            ],
        };
        assert_eq!(xone_verdict(&b1, &b2, &axes).unwrap().0, Verdict3::Conflict);
    }

    #[test]
    fn xone_arity_is_enforced() {
        let r = reg();
        let axes = vec![r.lookup(&format!("{OAX}absoluteSizeWidth")).unwrap()];
        let one = BranchSet::single(vec![w(&r, Operator::Lteq, 100)]);
        let two = BranchSet {
            branches: vec![
                vec![w(&r, Operator::Lteq, 100)],
                vec![w(&r, Operator::Gteq, 200)],
            ],
        };
        assert!(matches!(
            xone_verdict(&one, &two, &axes),
            Err(ComposeError::XoneArity(1, 2))
        ));
    }

    #[test]
    fn cross_domain_examples() {
        use Verdict3::*;
        let lv = |verdict| LabeledVerdict {
            operand: "x".into(),
            source: VerdictSource::ConceptValued,
            verdict,
            note: None,
        };
        assert_eq!(
            cross_domain_verdict(&[lv(Conflict), lv(Compatible), lv(Compatible), lv(Unknown)])
                .unwrap(),
            Conflict
        );
        assert_eq!(
            cross_domain_verdict(&[lv(Compatible), lv(Compatible)]).unwrap(),
            Compatible
        );
        assert_eq!(
            cross_domain_verdict(&[lv(Compatible), lv(Unknown)]).unwrap(),
            Unknown
        );
        assert!(matches!(
            cross_domain_verdict(&[]),
            Err(ComposeError::EmptyVerdicts)
        ));
    }
}
