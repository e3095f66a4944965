//! SMT-LIB v2 emission over linear real arithmetic (integer arithmetic for
//! discrete axes). Conflict checks assert the overlap witness formula, so
//! `unsat` confirms an empty intersection; subsumption checks assert the
//! left side conjoined with the negated right side, so `unsat` confirms no
//! witness escapes the wider scope.

use num::Signed;

use crate::axis::AxisConstraint;
use crate::compose::connective_verdict;
use crate::interval::{Density, Edge};
use crate::model::{Connective, Operator};
use crate::numeric::{format_decimal, Rat};
use crate::profile::AxisOperand;
use crate::verdict::Verdict3;

use super::{Encoder, EncodeError, Expected, ProverProblem, Relation};

pub struct SmtEncoder;

fn smt_num(v: &Rat) -> String {
    if v.is_negative() {
        format!("(- {})", format_decimal(&-v.clone()))
    } else {
        format_decimal(v)
    }
}

fn sort_of(op: &AxisOperand) -> &'static str {
    match op.domain.density() {
        Density::Dense => "Real",
        Density::IntegerDiscrete => "Int",
    }
}

fn var_names(axes: &[&AxisOperand]) -> Vec<String> {
    if axes.len() == 1 {
        vec!["x".to_string()]
    } else {
        (1..=axes.len()).map(|i| format!("x{i}")).collect()
    }
}

fn var_for<'v>(axes: &[&AxisOperand], vars: &'v [String], iri: &str) -> &'v str {
    let i = axes
        .iter()
        .position(|op| op.iri == iri)
        .expect("every constraint targets a declared axis");
    &vars[i]
}

fn atom(c: &AxisConstraint, axes: &[&AxisOperand], vars: &[String]) -> String {
    let var = var_for(axes, vars, &c.operand.iri);
    let v = smt_num(&c.value);
    let rel = match c.operator {
        Operator::Eq => "=",
        Operator::Lteq => "<=",
        Operator::Gteq => ">=",
        Operator::Lt => "<",
        Operator::Gt => ">",
        _ => unreachable!("non-dimensional operators never reach emission"),
    };
    format!("({rel} {var} {v})")
}

fn domain_conjuncts(axes: &[&AxisOperand], vars: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for (op, var) in axes.iter().zip(vars) {
        match op.domain.lo() {
            Edge::Unbounded => {}
            Edge::Closed(b) => out.push(format!("(>= {var} {})", smt_num(b))),
            Edge::Open(b) => out.push(format!("(> {var} {})", smt_num(b))),
        }
        match op.domain.hi() {
            Edge::Unbounded => {}
            Edge::Closed(b) => out.push(format!("(<= {var} {})", smt_num(b))),
            Edge::Open(b) => out.push(format!("(< {var} {})", smt_num(b))),
        }
    }
    out
}

fn conjoin(parts: &[String]) -> String {
    match parts.len() {
        0 => "true".to_string(),
        1 => parts[0].clone(),
        _ => format!("(and {})", parts.join(" ")),
    }
}

fn branch_formula(branch: &[AxisConstraint], axes: &[&AxisOperand], vars: &[String]) -> String {
    let atoms: Vec<String> = branch.iter().map(|c| atom(c, axes, vars)).collect();
    conjoin(&atoms)
}

fn side_formula(
    branches: &[Vec<AxisConstraint>],
    axes: &[&AxisOperand],
    vars: &[String],
) -> String {
    if branches.len() == 1 {
        branch_formula(&branches[0], axes, vars)
    } else {
        let parts: Vec<String> = branches
            .iter()
            .map(|b| branch_formula(b, axes, vars))
            .collect();
        format!("(or {})", parts.join(" "))
    }
}

impl Encoder for SmtEncoder {
    fn name(&self) -> &'static str {
        "smt"
    }

    fn extension(&self) -> &'static str {
        "smt2"
    }

    fn emit(&self, p: &ProverProblem) -> Result<String, EncodeError> {
        let (_, smt) = p.expected_statuses()?;
        let axes = p.axis_refs();
        let vars = var_names(&axes);
        let dom = domain_conjuncts(&axes, &vars);

        let mut out = String::new();
        out.push_str(&format!(
            "; {} : category {:?}, {:?}, expected {} ({}).\n",
            p.id,
            p.category,
            p.relation,
            p.expected.label(),
            smt.as_str()
        ));
        out.push_str("(set-logic ALL)\n");
        for (op, var) in axes.iter().zip(&vars) {
            out.push_str(&format!("(declare-const {var} {})\n", sort_of(op)));
        }
        for d in &dom {
            out.push_str(&format!("(assert {d})\n"));
        }

        match (p.relation, p.expected) {
            (Relation::ConflictCheck, Expected::Verdict(v))
                if v != Verdict3::Unknown =>
            {
                if p.connective == Connective::Xone
                    && v == Verdict3::Compatible
                    && (p.left.len() > 1 || p.right.len() > 1)
                {
                    emit_xone_compatible(p, &axes, &vars, &dom, &mut out)?;
                } else {
                    out.push_str(&format!(
                        "(assert {})\n(assert {})\n",
                        side_formula(&p.left.branches, &axes, &vars),
                        side_formula(&p.right.branches, &axes, &vars)
                    ));
                }
            }
            (Relation::SubsumptionCheck, Expected::Subsumption(sv))
                if sv != crate::verdict::SubsumptionVerdict::Unknown =>
            {
                if p.left.len() > 1 || p.right.len() > 1 {
                    return Err(EncodeError::BranchedSubsumption);
                }
                out.push_str(&format!(
                    "(assert {})\n(assert (not {}))\n",
                    branch_formula(&p.left.branches[0], &axes, &vars),
                    branch_formula(&p.right.branches[0], &axes, &vars)
                ));
            }
            _ => return Err(EncodeError::UnknownNotSubmittable),
        }
        out.push_str("(check-sat)\n");
        Ok(out)
    }
}

/// Exactly-one-pair-overlaps: the declared constants witness the single
/// compatible branch pair; a universally quantified non-overlap assertion
/// excludes every other pair.
fn emit_xone_compatible(
    p: &ProverProblem,
    axes: &[&AxisOperand],
    vars: &[String],
    _dom: &[String],
    out: &mut String,
) -> Result<(), EncodeError> {
    let (_, matrix) = connective_verdict(Connective::Xone, &p.left, &p.right, axes)?;
    let bound: Vec<String> = (1..=axes.len()).map(|i| format!("y{i}")).collect();
    let binders: Vec<String> = axes
        .iter()
        .zip(&bound)
        .map(|(op, y)| format!("({y} {})", sort_of(op)))
        .collect();
    let bound_dom = domain_conjuncts(axes, &bound);
    for i in 0..p.left.len() {
        for j in 0..p.right.len() {
            if matrix.get(i, j) == Verdict3::Compatible {
                out.push_str(&format!(
                    "(assert {})\n(assert {})\n",
                    branch_formula(&p.left.branches[i], axes, vars),
                    branch_formula(&p.right.branches[j], axes, vars)
                ));
            } else {
                let mut parts = bound_dom.clone();
                parts.push(branch_formula(&p.left.branches[i], axes, &bound));
                parts.push(branch_formula(&p.right.branches[j], axes, &bound));
                out.push_str(&format!(
                    "(assert (forall ({}) (not {})))\n",
                    binders.join(" "),
                    conjoin(&parts)
                ));
            }
        }
    }
    Ok(())
}
