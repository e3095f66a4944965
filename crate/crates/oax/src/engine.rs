//! Policy-level evaluation: lowering ODRL rules onto axis constraints,
//! pairing rules across policies, and assembling verdict reports.
//!
//! Evaluation dispatches on exact left-operand IRIs. Unrecognised operands
//! (including the ambiguous base dimensional operands) are never evaluated
//! numerically; they surface as Unknown cross-domain labels unless an
//! external side verdict supplies their label.

use indexmap::IndexMap;
use serde::Serialize;
use thiserror::Error;

use crate::axis::AxisConstraint;
use crate::compose::{
    connective_verdict, cross_domain_verdict, BranchSet, ComposeError, LabeledVerdict,
    VerdictSource,
};
use crate::model::{
    compact, expand, Connective, ConstraintExpr, ExecutionContext, ModelError, Policy, Rule,
    RuleKind,
};
use crate::profile::{AxisOperand, AxisRegistry};
use crate::verdict::{
    box_denote, box_subsumes, box_verdict, deontic_overlap, kleene_and, request_satisfied,
    DetailMap, RequestOutcome, SubsumptionDetailMap, SubsumptionVerdict, Verdict3, VerdictError,
};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Verdict(#[from] VerdictError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("operator {operator:?} on {operand} is not supported in dimensional evaluation")]
    UnsupportedOperator { operand: String, operator: String },
    #[error("right operand of {0} must be a decimal for dimensional evaluation")]
    NonDecimal(String),
    #[error("or/xone constraints are not supported by {0}")]
    BranchingUnsupported(&'static str),
}

/// A rule lowered to evaluable form: a branch set of axis constraints plus
/// the operand IRIs that could not be evaluated dimensionally.
#[derive(Debug, Clone)]
pub struct RuleScope {
    pub kind: RuleKind,
    pub action: String,
    pub path: String,
    pub connective: Connective,
    pub branches: BranchSet,
    pub unknown_operands: Vec<String>,
}

impl RuleScope {
    pub fn is_branched(&self) -> bool {
        self.connective != Connective::And || self.branches.len() > 1
    }

    fn all_constraints(&self) -> impl Iterator<Item = &AxisConstraint> {
        self.branches.branches.iter().flatten()
    }
}

fn lower_atomic(
    c: &crate::model::Constraint,
    registry: &AxisRegistry,
) -> Result<Option<AxisConstraint>, EngineError> {
    let Some(op) = registry.lookup(&c.left_operand) else {
        return Ok(None);
    };
    if !c.operator.is_dimensional() {
        return Err(EngineError::UnsupportedOperator {
            operand: compact(&c.left_operand),
            operator: c.operator.name().to_string(),
        });
    }
    let value = c
        .right_operand
        .as_decimal()
        .ok_or_else(|| EngineError::NonDecimal(compact(&c.left_operand)))?;
    Ok(Some(AxisConstraint::new(
        op.clone(),
        c.operator,
        value.clone(),
    )))
}

/// Lowers one rule. Atomic constraints and `and` branches form a common
/// prefix; `or`/`xone` constraints multiply out into branches.
pub fn lower_rule(
    rule: &Rule,
    path: &str,
    registry: &AxisRegistry,
) -> Result<RuleScope, EngineError> {
    let mut prefix: Vec<AxisConstraint> = Vec::new();
    let mut unknown: Vec<String> = Vec::new();
    let mut branch_groups: Vec<Vec<Vec<AxisConstraint>>> = Vec::new();
    let mut connective = Connective::And;

    for expr in &rule.constraints {
        match expr {
            ConstraintExpr::Atomic(c) => match lower_atomic(c, registry)? {
                Some(ac) => prefix.push(ac),
                None => unknown.push(c.left_operand.clone()),
            },
            ConstraintExpr::Logical(l) => match l.connective {
                Connective::And => {
                    for c in &l.branches {
                        match lower_atomic(c, registry)? {
                            Some(ac) => prefix.push(ac),
                            None => unknown.push(c.left_operand.clone()),
                        }
                    }
                }
                Connective::Or | Connective::Xone => {
                    if l.connective == Connective::Xone {
                        connective = Connective::Xone;
                    } else if connective == Connective::And {
                        connective = Connective::Or;
                    }
                    let mut group = Vec::new();
                    for c in &l.branches {
                        match lower_atomic(c, registry)? {
                            Some(ac) => group.push(vec![ac]),
                            // an unknown operand inside a branch leaves the
                            // branch unconstrained dimensionally
                            None => {
                                unknown.push(c.left_operand.clone());
                                group.push(Vec::new());
                            }
                        }
                    }
                    branch_groups.push(group);
                }
            },
        }
    }

    // Cross product of disjunctive groups, each branch extended by the prefix.
    let mut branches: Vec<Vec<AxisConstraint>> = vec![prefix];
    for group in branch_groups {
        let mut next = Vec::new();
        for stem in &branches {
            for alt in &group {
                let mut b = stem.clone();
                b.extend(alt.iter().cloned());
                next.push(b);
            }
        }
        branches = next;
    }
    unknown.sort();
    unknown.dedup();

    Ok(RuleScope {
        kind: rule.kind,
        action: rule.action.clone(),
        path: path.to_string(),
        connective,
        branches: BranchSet { branches },
        unknown_operands: unknown,
    })
}

pub fn lower_policy(
    policy: &Policy,
    registry: &AxisRegistry,
) -> Result<Vec<RuleScope>, EngineError> {
    let mut out = Vec::new();
    let mut counters: IndexMap<RuleKind, usize> = IndexMap::new();
    for rule in &policy.rules {
        let n = counters.entry(rule.kind).or_insert(0);
        let path = format!("{}[{}]", rule.kind.key(), n);
        *n += 1;
        out.push(lower_rule(rule, &path, registry)?);
    }
    Ok(out)
}

/// Axis operands constrained anywhere in the given scopes, in registry order.
pub fn constrained_axes<'r>(
    scopes: &[&RuleScope],
    registry: &'r AxisRegistry,
) -> Vec<&'r AxisOperand> {
    let mut iris: Vec<&str> = Vec::new();
    for scope in scopes {
        for c in scope.all_constraints() {
            if !iris.contains(&c.operand.iri.as_str()) {
                iris.push(&c.operand.iri);
            }
        }
    }
    registry
        .operands()
        .iter()
        .filter(|op| iris.contains(&op.iri.as_str()))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub left_rule: String,
    pub right_rule: String,
    pub action: String,
    pub mode: &'static str,
    pub verdict: Verdict3,
    #[serde(skip_serializing_if = "IndexMap::is_empty")]
    pub axes: DetailMap,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub conflicting_axes: Vec<String>,
}

/// The stable verdict-report schema: aggregate verdict plus per-axis detail.
#[derive(Debug, Clone, Serialize)]
pub struct ConflictReport {
    pub verdict: Verdict3,
    pub axes: DetailMap,
    pub conflicting_axes: Vec<String>,
    pub pairs: Vec<PairReport>,
    pub cross_domain: Vec<LabeledVerdict>,
}

fn unknown_label(iri: &str, side: &[LabeledVerdict]) -> LabeledVerdict {
    for lv in side {
        let expanded = expand(&lv.operand).unwrap_or_else(|_| lv.operand.clone());
        if expanded == iri || lv.operand == iri {
            return LabeledVerdict {
                operand: compact(iri),
                ..lv.clone()
            };
        }
    }
    LabeledVerdict {
        operand: compact(iri),
        source: VerdictSource::Scalar,
        verdict: Verdict3::Unknown,
        note: Some("unrecognised operand; no external verdict supplied".into()),
    }
}

fn compact_keys<V>(map: IndexMap<String, V>) -> IndexMap<String, V> {
    map.into_iter().map(|(k, v)| (compact(&k), v)).collect()
}

/// Evaluates the dimensional, deontic, and cross-domain verdicts between two
/// policies. External verdict labels for concept-valued or scalar operands
/// come from `side_verdicts`.
pub fn conflict_report(
    p1: &Policy,
    p2: &Policy,
    registry: &AxisRegistry,
    side_verdicts: &[LabeledVerdict],
) -> Result<ConflictReport, EngineError> {
    let left = lower_policy(p1, registry)?;
    let right = lower_policy(p2, registry)?;

    let mut pairs = Vec::new();
    let mut merged_axes = DetailMap::new();
    let mut conflicting = Vec::new();
    let mut unknown_iris: Vec<String> = Vec::new();

    for l in &left {
        for r in &right {
            if l.action != r.action {
                continue;
            }
            unknown_iris.extend(l.unknown_operands.iter().cloned());
            unknown_iris.extend(r.unknown_operands.iter().cloned());
            let deontic = matches!(
                (l.kind, r.kind),
                (RuleKind::Permission, RuleKind::Prohibition)
                    | (RuleKind::Prohibition, RuleKind::Permission)
            );
            let axes = constrained_axes(&[l, r], registry);
            let (mode, verdict, detail): (&'static str, Verdict3, DetailMap) = if deontic {
                let (perm, prohib) = if l.kind == RuleKind::Permission {
                    (l, r)
                } else {
                    (r, l)
                };
                let mut branch_verdicts = Vec::new();
                for pb in &perm.branches.branches {
                    for qb in &prohib.branches.branches {
                        let p_den = box_denote(pb, &axes)?;
                        let q_den = box_denote(qb, &axes)?;
                        branch_verdicts.push(deontic_overlap(&p_den, &q_den)?);
                    }
                }
                let v = if branch_verdicts.iter().any(|v| *v == Verdict3::Conflict) {
                    Verdict3::Conflict
                } else if branch_verdicts.iter().all(|v| *v == Verdict3::Compatible)
                    && !branch_verdicts.is_empty()
                {
                    Verdict3::Compatible
                } else {
                    Verdict3::Unknown
                };
                ("deontic", v, DetailMap::new())
            } else if l.is_branched() || r.is_branched() {
                let conn = if l.connective == Connective::Xone || r.connective == Connective::Xone
                {
                    Connective::Xone
                } else {
                    Connective::Or
                };
                let (v, _matrix) = connective_verdict(conn, &l.branches, &r.branches, &axes)?;
                (conn.key(), v, DetailMap::new())
            } else {
                let (v, detail) =
                    box_verdict(&l.branches.branches[0], &r.branches.branches[0], &axes)?;
                ("box", v, detail)
            };

            let detail = compact_keys(detail);
            let pair_conflicting: Vec<String> = detail
                .iter()
                .filter(|(_, d)| d.verdict == Verdict3::Conflict)
                .map(|(iri, _)| iri.clone())
                .collect();
            for (iri, d) in &detail {
                merged_axes.entry(iri.clone()).or_insert_with(|| d.clone());
            }
            for iri in &pair_conflicting {
                if !conflicting.contains(iri) {
                    conflicting.push(iri.clone());
                }
            }
            pairs.push(PairReport {
                left_rule: l.path.clone(),
                right_rule: r.path.clone(),
                action: compact(&l.action),
                mode,
                verdict,
                axes: detail,
                conflicting_axes: pair_conflicting,
            });
        }
    }

    unknown_iris.sort();
    unknown_iris.dedup();
    let mut cross: Vec<LabeledVerdict> =
        unknown_iris.iter().map(|iri| unknown_label(iri, side_verdicts)).collect();
    // Side-file entries for operands not present in either policy still
    // participate (concept-valued verdicts arrive only as labels).
    for lv in side_verdicts {
        let expanded = expand(&lv.operand).unwrap_or_else(|_| lv.operand.clone());
        if !unknown_iris.iter().any(|u| *u == expanded || *u == lv.operand) {
            cross.push(lv.clone());
        }
    }

    let mut all: Vec<Verdict3> = pairs.iter().map(|p| p.verdict).collect();
    all.extend(cross.iter().map(|lv| lv.verdict));
    let verdict = if all.is_empty() {
        Verdict3::Unknown
    } else {
        all.into_iter().fold(Verdict3::Compatible, kleene_and)
    };

    Ok(ConflictReport {
        verdict,
        axes: merged_axes,
        conflicting_axes: conflicting,
        pairs,
        cross_domain: cross,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsumptionPair {
    pub left_rule: String,
    pub right_rule: String,
    pub action: String,
    pub verdict: SubsumptionVerdict,
    pub axes: SubsumptionDetailMap,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubsumptionReport {
    pub verdict: SubsumptionVerdict,
    pub pairs: Vec<SubsumptionPair>,
}

/// Box subsumption between matching rules: Confirmed means every rule of the
/// first policy refines the scope of its counterpart in the second.
pub fn subsumption_report(
    narrow: &Policy,
    wide: &Policy,
    registry: &AxisRegistry,
) -> Result<SubsumptionReport, EngineError> {
    let left = lower_policy(narrow, registry)?;
    let right = lower_policy(wide, registry)?;
    let mut pairs = Vec::new();
    for l in &left {
        for r in &right {
            if l.action != r.action || l.kind != r.kind {
                continue;
            }
            if l.is_branched() || r.is_branched() {
                return Err(EngineError::BranchingUnsupported("subsume"));
            }
            let axes = constrained_axes(&[l, r], registry);
            let (v, detail) =
                box_subsumes(&l.branches.branches[0], &r.branches.branches[0], &axes)?;
            pairs.push(SubsumptionPair {
                left_rule: l.path.clone(),
                right_rule: r.path.clone(),
                action: compact(&l.action),
                verdict: v,
                axes: compact_keys(detail),
            });
        }
    }
    let verdict = if pairs.iter().any(|p| p.verdict == SubsumptionVerdict::Refuted) {
        SubsumptionVerdict::Refuted
    } else if !pairs.is_empty()
        && pairs.iter().all(|p| p.verdict == SubsumptionVerdict::Confirmed)
    {
        SubsumptionVerdict::Confirmed
    } else {
        SubsumptionVerdict::Unknown
    };
    Ok(SubsumptionReport { verdict, pairs })
}

#[derive(Debug, Clone, Serialize)]
pub struct RuleRequestReport {
    pub rule: String,
    pub action: String,
    pub satisfied: bool,
    pub branches: Vec<RequestOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_operands: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RequestReport {
    pub satisfied: bool,
    pub rules: Vec<RuleRequestReport>,
}

/// Evaluates a request context against every permission and obligation rule.
/// Disjunctive rules are satisfied when some branch is (exactly one for
/// xone); constraints on unrecognised operands are skipped with a note.
pub fn request_report(
    policy: &Policy,
    ctx: &ExecutionContext,
    registry: &AxisRegistry,
) -> Result<RequestReport, EngineError> {
    let scopes = lower_policy(policy, registry)?;
    let mut rules = Vec::new();
    let mut satisfied = true;
    for scope in &scopes {
        if scope.kind == RuleKind::Prohibition {
            continue;
        }
        let mut outcomes = Vec::new();
        let mut sat_count = 0usize;
        for branch in &scope.branches.branches {
            let axes = {
                let mut iris: Vec<&str> = Vec::new();
                for c in branch {
                    if !iris.contains(&c.operand.iri.as_str()) {
                        iris.push(&c.operand.iri);
                    }
                }
                registry
                    .operands()
                    .iter()
                    .filter(|op| iris.contains(&op.iri.as_str()))
                    .collect::<Vec<_>>()
            };
            let outcome = request_satisfied(ctx, branch, &axes)?;
            if outcome.satisfied {
                sat_count += 1;
            }
            outcomes.push(outcome);
        }
        let rule_ok = match scope.connective {
            Connective::And => outcomes.iter().all(|o| o.satisfied),
            Connective::Or => sat_count >= 1,
            Connective::Xone => sat_count == 1,
        };
        if !rule_ok {
            satisfied = false;
        }
        rules.push(RuleRequestReport {
            rule: scope.path.clone(),
            action: compact(&scope.action),
            satisfied: rule_ok,
            branches: outcomes,
            skipped_operands: scope.unknown_operands.iter().map(|i| compact(i)).collect(),
        });
    }
    Ok(RequestReport { satisfied, rules })
}

/// Renders the conflict report as human-readable text.
pub fn conflict_report_text(report: &ConflictReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict: {:?}\n", report.verdict));
    for (iri, d) in &report.axes {
        out.push_str(&format!(
            "axis {iri}: left {} right {} intersection {} -> {:?}\n",
            d.left, d.right, d.intersection, d.verdict
        ));
    }
    match report.conflicting_axes.len() {
        0 => {}
        1 => out.push_str(&format!(
            "sole conflicting axis: {}\n",
            report.conflicting_axes[0]
        )),
        _ => out.push_str(&format!(
            "conflicting axes: {}\n",
            report.conflicting_axes.join(", ")
        )),
    }
    for lv in &report.cross_domain {
        out.push_str(&format!(
            "cross-domain {}: {:?}{}\n",
            lv.operand,
            lv.verdict,
            lv.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default()
        ));
    }
    out
}

pub fn verify_cross_domain(report: &ConflictReport) -> Result<Verdict3, EngineError> {
    // The aggregate must equal the Kleene fold over pair and label verdicts;
    // exposed for the harness.
    let mut labels: Vec<LabeledVerdict> = report
        .pairs
        .iter()
        .map(|p| LabeledVerdict {
            operand: p.action.clone(),
            source: VerdictSource::Dimensional,
            verdict: p.verdict,
            note: None,
        })
        .collect();
    labels.extend(report.cross_domain.iter().cloned());
    Ok(cross_domain_verdict(&labels)?)
}
