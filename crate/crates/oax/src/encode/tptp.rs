//! TPTP-FOF emission. Each problem file includes the two shared axiom
//! files, introduces one named constant per distinct numeric literal, lays
//! down the full pairwise ordering closure over those constants, and states
//! one conjecture whose polarity is chosen so the expected SZS status is
//! Theorem for definite conflict/compatibility verdicts and
//! CounterSatisfiable only for refuted subsumptions.

use num::One;

use crate::axis::AxisConstraint;
use crate::compose::connective_verdict;
use crate::interval::{Density, Edge};
use crate::model::{Connective, Operator};
use crate::numeric::{format_decimal, Rat};
use crate::profile::AxisOperand;
use crate::verdict::Verdict3;

use super::{
    Encoder, EncodeError, Expected, ProverProblem, Relation, AXIS_AXIOM_FILE, ORDER_AXIOM_FILE,
};

pub struct TptpEncoder;

/// Stable constant naming: `n600`, `n0p5` (`p` for the decimal point),
/// `nm90` (`m` for the minus sign).
pub(crate) fn const_name(v: &Rat) -> String {
    let s = format_decimal(v).replace('-', "m").replace('.', "p");
    format!("n{s}")
}

/// On integer-discrete axes strict bounds are pre-normalized to their
/// closed successors so the density axiom (sound for dense orders only as a
/// witness source) never manufactures a non-integer point that flips a
/// verdict.
pub(crate) fn normalize_discrete(c: &AxisConstraint) -> (Operator, Rat) {
    if c.operand.domain.density() == Density::Dense {
        return (c.operator, c.value.clone());
    }
    match c.operator {
        Operator::Lt => {
            if c.value.is_integer() {
                (Operator::Lteq, &c.value - Rat::one())
            } else {
                (Operator::Lteq, c.value.floor())
            }
        }
        Operator::Gt => {
            if c.value.is_integer() {
                (Operator::Gteq, &c.value + Rat::one())
            } else {
                (Operator::Gteq, c.value.ceil())
            }
        }
        Operator::Lteq => (Operator::Lteq, c.value.floor()),
        Operator::Gteq => (Operator::Gteq, c.value.ceil()),
        op => (op, c.value.clone()),
    }
}

fn atom(op: Operator, var: &str, value: &Rat) -> String {
    let c = const_name(value);
    match op {
        Operator::Eq => format!("{var} = {c}"),
        Operator::Lteq => format!("leq({var},{c})"),
        Operator::Gteq => format!("geq({var},{c})"),
        Operator::Lt => format!("lt({var},{c})"),
        Operator::Gt => format!("lt({c},{var})"),
        _ => unreachable!("non-dimensional operators never reach emission"),
    }
}

fn var_names(axes: &[&AxisOperand]) -> Vec<String> {
    if axes.len() == 1 {
        vec!["X".to_string()]
    } else {
        (1..=axes.len()).map(|i| format!("X{i}")).collect()
    }
}

fn var_for<'v>(axes: &[&AxisOperand], vars: &'v [String], iri: &str) -> &'v str {
    let i = axes
        .iter()
        .position(|op| op.iri == iri)
        .expect("every constraint targets a declared axis");
    &vars[i]
}

/// Domain-bound literals for each axis variable; their constants join the
/// ordering chain like any other literal.
fn domain_conjuncts(axes: &[&AxisOperand], vars: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for (op, var) in axes.iter().zip(vars) {
        match op.domain.lo() {
            Edge::Unbounded => {}
            Edge::Closed(b) => out.push(format!("geq({var},{})", const_name(b))),
            Edge::Open(b) => out.push(format!("lt({},{var})", const_name(b))),
        }
        match op.domain.hi() {
            Edge::Unbounded => {}
            Edge::Closed(b) => out.push(format!("leq({var},{})", const_name(b))),
            Edge::Open(b) => out.push(format!("lt({var},{})", const_name(b))),
        }
    }
    out
}

fn branch_formula(branch: &[AxisConstraint], axes: &[&AxisOperand], vars: &[String]) -> String {
    if branch.is_empty() {
        return "$true".to_string();
    }
    branch
        .iter()
        .map(|c| {
            let (op, v) = normalize_discrete(c);
            atom(op, var_for(axes, vars, &c.operand.iri), &v)
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

fn side_formula(
    branches: &[Vec<AxisConstraint>],
    axes: &[&AxisOperand],
    vars: &[String],
) -> String {
    if branches.len() == 1 {
        branch_formula(&branches[0], axes, vars)
    } else {
        branches
            .iter()
            .map(|b| format!("({})", branch_formula(b, axes, vars)))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// All numeric literals in the problem after discrete normalization, plus
/// finite domain bounds, sorted ascending without duplicates.
fn collect_constants(p: &ProverProblem) -> Vec<Rat> {
    let mut consts: Vec<Rat> = Vec::new();
    let mut push = |v: Rat| {
        if !consts.contains(&v) {
            consts.push(v);
        }
    };
    for branch in p.left.branches.iter().chain(p.right.branches.iter()) {
        for c in branch {
            let (_, v) = normalize_discrete(c);
            push(v);
        }
    }
    for op in &p.axes {
        for edge in [op.domain.lo(), op.domain.hi()] {
            match edge {
                Edge::Open(b) | Edge::Closed(b) => push(b.clone()),
                Edge::Unbounded => {}
            }
        }
    }
    consts.sort();
    consts
}

fn conjoin(parts: &[String]) -> String {
    parts.join(" & ")
}

fn wrap_dom(dom: &[String], body: String) -> String {
    if dom.is_empty() {
        body
    } else {
        format!("{} & {}", conjoin(dom), body)
    }
}

impl Encoder for TptpEncoder {
    fn name(&self) -> &'static str {
        "tptp"
    }

    fn extension(&self) -> &'static str {
        "p"
    }

    fn emit(&self, p: &ProverProblem) -> Result<String, EncodeError> {
        let (szs, _) = p.expected_statuses()?;
        let axes = p.axis_refs();
        let vars = var_names(&axes);
        let dom = domain_conjuncts(&axes, &vars);
        let quant = vars.join(",");
        let left = side_formula(&p.left.branches, &axes, &vars);
        let right = side_formula(&p.right.branches, &axes, &vars);

        let mut out = String::new();
        out.push_str(&format!(
            "% {} : category {:?}, {:?}, expected {} (SZS {}).\n",
            p.id,
            p.category,
            p.relation,
            p.expected.label(),
            szs.as_str()
        ));
        out.push_str(
            "% Conflict polarity: non-overlap is conjectured when a conflict is expected,\n\
             % an overlap witness when compatibility is expected; both prove as Theorem.\n",
        );
        out.push_str(&format!("include('ax/{AXIS_AXIOM_FILE}').\n"));
        out.push_str(&format!("include('ax/{ORDER_AXIOM_FILE}').\n"));

        let consts = collect_constants(p);
        let mut ord_index = 0usize;
        for i in 0..consts.len() {
            for j in (i + 1)..consts.len() {
                ord_index += 1;
                out.push_str(&format!(
                    "fof(ord_{ord_index}, axiom, lt({},{})).\n",
                    const_name(&consts[i]),
                    const_name(&consts[j])
                ));
            }
        }

        let conjecture = match (p.relation, p.expected) {
            (Relation::ConflictCheck, Expected::Verdict(Verdict3::Conflict)) => {
                let body = wrap_dom(&dom, format!("({left}) & ({right})"));
                format!("~ ? [{quant}] : ({body})")
            }
            (Relation::ConflictCheck, Expected::Verdict(Verdict3::Compatible)) => {
                if p.connective == Connective::Xone
                    && (p.left.len() > 1 || p.right.len() > 1)
                {
                    xone_compatible_conjecture(p, &axes, &vars, &dom)?
                } else {
                    let body = wrap_dom(&dom, format!("({left}) & ({right})"));
                    format!("? [{quant}] : ({body})")
                }
            }
            (Relation::SubsumptionCheck, _) => {
                if p.left.len() > 1 || p.right.len() > 1 {
                    return Err(EncodeError::BranchedSubsumption);
                }
                let ante = wrap_dom(&dom, format!("({left})"));
                format!("! [{quant}] : (({ante}) => ({right}))")
            }
            _ => return Err(EncodeError::UnknownNotSubmittable),
        };
        out.push_str(&format!("fof(goal, conjecture, {conjecture}).\n"));
        Ok(out)
    }
}

/// An xone verdict of Compatible asserts "exactly one branch pair
/// overlaps": one existential witness for the overlapping pair, conjoined
/// with non-overlap statements for every other pair.
fn xone_compatible_conjecture(
    p: &ProverProblem,
    axes: &[&AxisOperand],
    vars: &[String],
    dom: &[String],
) -> Result<String, EncodeError> {
    let (_, matrix) = connective_verdict(Connective::Xone, &p.left, &p.right, axes)?;
    let quant = vars.join(",");
    let mut parts = Vec::new();
    for i in 0..p.left.len() {
        for j in 0..p.right.len() {
            let body = wrap_dom(
                dom,
                format!(
                    "({}) & ({})",
                    branch_formula(&p.left.branches[i], axes, vars),
                    branch_formula(&p.right.branches[j], axes, vars)
                ),
            );
            if matrix.get(i, j) == Verdict3::Compatible {
                parts.insert(0, format!("(? [{quant}] : ({body}))"));
            } else {
                parts.push(format!("(~ ? [{quant}] : ({body}))"));
            }
        }
    }
    Ok(parts.join(" & "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::BranchSet;
    use crate::numeric::rat;
    use crate::profile::{AxisRegistry, OAX};
    use crate::verdict::SubsumptionVerdict;
    use super::super::Category;

    fn axis(name: &str) -> AxisOperand {
        AxisRegistry::standard()
            .lookup(&format!("{OAX}{name}"))
            .unwrap()
            .clone()
    }

    fn single(op: AxisOperand, operator: Operator, v: i64) -> Vec<AxisConstraint> {
        vec![AxisConstraint::new(op, operator, rat(v))]
    }

    #[test]
    fn conflict_pair_emits_negated_existential_with_ordering_chain() {
        // An unbounded axis keeps the file free of domain-bound conjuncts.
        let x = axis("absoluteSpatialPositionX");
        let p = ProverProblem {
            id: "t1".into(),
            category: Category::A,
            relation: Relation::ConflictCheck,
            connective: Connective::And,
            left: BranchSet::single(single(x.clone(), Operator::Lteq, 600)),
            right: BranchSet::single(single(x, Operator::Gteq, 800)),
            axes: vec![axis("absoluteSpatialPositionX")],
            expected: Expected::Verdict(Verdict3::Conflict),
        };
        let text = emit(&p);
        assert!(text.contains("~ ? [X] : ((leq(X,n600)) & (geq(X,n800)))"), "{text}");
        assert!(text.contains("fof(ord_1, axiom, lt(n600,n800))."));
        assert!(text.contains("include('ax/AXIS000-0.ax')."));
    }

    fn emit(p: &ProverProblem) -> String {
        TptpEncoder.emit(p).unwrap()
    }

    #[test]
    fn subsumption_pair_emits_implication() {
        let x = axis("absoluteSpatialPositionX");
        let p = ProverProblem {
            id: "t2".into(),
            category: Category::C,
            relation: Relation::SubsumptionCheck,
            connective: Connective::And,
            left: BranchSet::single(single(x.clone(), Operator::Lteq, 600)),
            right: BranchSet::single(single(x, Operator::Lteq, 1200)),
            axes: vec![axis("absoluteSpatialPositionX")],
            expected: Expected::Subsumption(SubsumptionVerdict::Confirmed),
        };
        let text = emit(&p);
        assert!(
            text.contains("! [X] : (((leq(X,n600))) => (leq(X,n1200)))"),
            "{text}"
        );
    }

    #[test]
    fn domain_bounds_join_formula_and_chain() {
        let w = axis("absoluteSizeWidth");
        let p = ProverProblem {
            id: "t3".into(),
            category: Category::A,
            relation: Relation::ConflictCheck,
            connective: Connective::And,
            left: BranchSet::single(single(w.clone(), Operator::Lteq, 600)),
            right: BranchSet::single(single(w.clone(), Operator::Gteq, 100)),
            axes: vec![w],
            expected: Expected::Verdict(Verdict3::Compatible),
        };
        let text = emit(&p);
        assert!(text.contains("lt(n0,X)"), "{text}");
        assert!(text.contains("fof(ord_1, axiom, lt(n0,n100))."));
        assert!(text.contains("fof(ord_2, axiom, lt(n0,n600))."));
        assert!(text.contains("fof(ord_3, axiom, lt(n100,n600))."));
    }

    #[test]
    fn constant_names_encode_sign_and_decimal_point() {
        assert_eq!(const_name(&rat(600)), "n600");
        assert_eq!(const_name(&rat(-90)), "nm90");
        assert_eq!(
            const_name(&(Rat::new(1.into(), 2.into()))),
            "n0p5"
        );
    }

    #[test]
    fn discrete_axes_normalize_strict_bounds() {
        let mut reg = AxisRegistry::standard();
        let iri = format!("{OAX}absoluteSizeWidth");
        reg.set_density(&iri, crate::interval::Density::IntegerDiscrete)
            .unwrap();
        let w = reg.lookup(&iri).unwrap().clone();
        let c = AxisConstraint::new(w.clone(), Operator::Gt, rat(5));
        assert_eq!(normalize_discrete(&c), (Operator::Gteq, rat(6)));
        let c = AxisConstraint::new(w, Operator::Lt, rat(5));
        assert_eq!(normalize_discrete(&c), (Operator::Lteq, rat(4)));
    }

    #[test]
    fn emission_is_deterministic() {
        let x = axis("absoluteSpatialPositionX");
        let p = ProverProblem {
            id: "t4".into(),
            category: Category::A,
            relation: Relation::ConflictCheck,
            connective: Connective::And,
            left: BranchSet::single(single(x.clone(), Operator::Lt, 10)),
            right: BranchSet::single(single(x, Operator::Gt, 3)),
            axes: vec![axis("absoluteSpatialPositionX")],
            expected: Expected::Verdict(Verdict3::Compatible),
        };
        assert_eq!(emit(&p), emit(&p));
    }
}
