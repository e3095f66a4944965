//! Design-time policy quality checks: dimensional ambiguity,
//! self-contradiction, redundancy, axis coverage, bound violations, and
//! supply-chain refinement.
//!
//! Each check is a [`LintRule`] registered by name in a [`LintRegistry`], so
//! callers can run the full set or a selection.

use serde::Serialize;
use thiserror::Error;

use crate::axis::AxisConstraint;
use crate::engine::{lower_policy, EngineError};
use crate::interval::Interval;
use crate::model::{compact, Constraint, ConstraintExpr, Policy};
use crate::profile::{
    is_dimensional_base, validate_right_operand, Axis, AxisRegistry, DIMENSIONAL_BASES, ODRL,
};
use crate::verdict::{box_subsumes, SubsumptionDetailMap, SubsumptionVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FindingKind {
    Ambiguity,
    SelfContradiction,
    Redundancy,
    IncompleteCoverage,
    RefinementViolation,
    BoundViolation,
}

#[derive(Debug, Clone, Serialize)]
pub struct LintFinding {
    pub severity: Severity,
    pub kind: FindingKind,
    pub location: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interpretations: Option<usize>,
}

#[derive(Debug, Error)]
pub enum LintError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("{0} is not a dimensional base operand")]
    NotDimensional(String),
    #[error("no comparable rule pair (matching action and kind) between the policies")]
    NoComparableRules,
}

/// One atomic constraint with its path inside the policy,
/// e.g. `permission[0].constraint[1]` or `permission[0].constraint[0].or[2]`.
struct Located<'p> {
    path: String,
    constraint: &'p Constraint,
    /// Index of the enclosing rule in `policy.rules`.
    rule: usize,
    /// Whether the constraint sits in the rule's implicit conjunction
    /// (top-level atomic or inside an `and`), as opposed to an or/xone branch.
    conjunctive: bool,
}

fn walk(policy: &Policy) -> Vec<Located<'_>> {
    let mut out = Vec::new();
    let mut kind_counts = std::collections::HashMap::new();
    for (ri, rule) in policy.rules.iter().enumerate() {
        let n = kind_counts.entry(rule.kind).or_insert(0usize);
        let rule_path = format!("{}[{}]", rule.kind.key(), n);
        *n += 1;
        for (ci, expr) in rule.constraints.iter().enumerate() {
            match expr {
                ConstraintExpr::Atomic(c) => out.push(Located {
                    path: format!("{rule_path}.constraint[{ci}]"),
                    constraint: c,
                    rule: ri,
                    conjunctive: true,
                }),
                ConstraintExpr::Logical(l) => {
                    for (bi, c) in l.branches.iter().enumerate() {
                        out.push(Located {
                            path: format!(
                                "{rule_path}.constraint[{ci}].{}[{bi}]",
                                l.connective.key()
                            ),
                            constraint: c,
                            rule: ri,
                            conjunctive: l.connective == crate::model::Connective::And,
                        });
                    }
                }
            }
        }
    }
    out
}

pub trait LintRule {
    fn name(&self) -> &'static str;
    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding>;
}

struct AmbiguityRule;

impl LintRule for AmbiguityRule {
    fn name(&self) -> &'static str {
        "ambiguity"
    }

    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        for loc in walk(policy) {
            let iri = &loc.constraint.left_operand;
            if !is_dimensional_base(iri) {
                continue;
            }
            let axes = registry.decompose(iri).unwrap_or_default();
            let n = if axes.is_empty() { 3 } else { axes.len() };
            let replacements: Vec<String> =
                axes.iter().map(|op| compact(&op.iri)).collect();
            findings.push(LintFinding {
                severity: Severity::Warning,
                kind: FindingKind::Ambiguity,
                location: loc.path,
                message: format!(
                    "{} admits {} interpretations ({} axis-specific plus max and min \
                     aggregates); replace it with one of: {}",
                    compact(iri),
                    n + 2,
                    n,
                    replacements.join(", ")
                ),
                interpretations: Some(n + 2),
            });
        }
        findings
    }
}

/// Same-axis constraint groups within one rule's implicit conjunction.
fn conjunctive_axis_groups<'p>(
    policy: &'p Policy,
    registry: &AxisRegistry,
) -> Vec<(usize, String, Vec<(String, AxisConstraint)>)> {
    let mut groups: Vec<(usize, String, Vec<(String, AxisConstraint)>)> = Vec::new();
    for loc in walk(policy) {
        if !loc.conjunctive {
            continue;
        }
        let Some(op) = registry.lookup(&loc.constraint.left_operand) else {
            continue;
        };
        if !loc.constraint.operator.is_dimensional() {
            continue;
        }
        let Some(v) = loc.constraint.right_operand.as_decimal() else {
            continue;
        };
        let ac = AxisConstraint::new(op.clone(), loc.constraint.operator, v.clone());
        match groups
            .iter_mut()
            .find(|(r, iri, _)| *r == loc.rule && *iri == op.iri)
        {
            Some((_, _, members)) => members.push((loc.path, ac)),
            None => groups.push((loc.rule, op.iri.clone(), vec![(loc.path, ac)])),
        }
    }
    groups
}

struct SelfContradictionRule;

impl LintRule for SelfContradictionRule {
    fn name(&self) -> &'static str {
        "self-contradiction"
    }

    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        for (_, iri, members) in conjunctive_axis_groups(policy, registry) {
            let mut meet: Option<Interval> = None;
            for (_, ac) in &members {
                let Ok(den) = ac.denote() else { continue };
                meet = Some(match meet {
                    None => den,
                    Some(m) => m.intersect(&den).expect("same axis, same density"),
                });
            }
            if let Some(m) = meet {
                if m.is_empty() {
                    let paths: Vec<&str> =
                        members.iter().map(|(p, _)| p.as_str()).collect();
                    findings.push(LintFinding {
                        severity: Severity::Error,
                        kind: FindingKind::SelfContradiction,
                        location: members[0].0.clone(),
                        message: format!(
                            "constraints on {} are jointly unsatisfiable (empty interval); \
                             contributing constraints: {}",
                            compact(&iri),
                            paths.join(", ")
                        ),
                        interpretations: None,
                    });
                }
            }
        }
        findings
    }
}

struct RedundancyRule;

impl LintRule for RedundancyRule {
    fn name(&self) -> &'static str {
        "redundancy"
    }

    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        for (_, iri, members) in conjunctive_axis_groups(policy, registry) {
            if members.len() < 2 {
                continue;
            }
            for (i, (path, ac)) in members.iter().enumerate() {
                let Ok(own) = ac.denote() else { continue };
                let mut rest: Option<Interval> = None;
                for (j, (_, other)) in members.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let Ok(den) = other.denote() else { continue };
                    rest = Some(match rest {
                        None => den,
                        Some(m) => m.intersect(&den).expect("same axis, same density"),
                    });
                }
                let Some(rest) = rest else { continue };
                if rest.is_subset(&own).unwrap_or(false) {
                    findings.push(LintFinding {
                        severity: Severity::Warning,
                        kind: FindingKind::Redundancy,
                        location: path.clone(),
                        message: format!(
                            "{} {} {} is redundant: the remaining constraints on {} already \
                             restrict the axis to {}",
                            compact(&ac.operand.iri),
                            ac.operator.name(),
                            crate::numeric::format_decimal(&ac.value),
                            compact(&iri),
                            rest
                        ),
                        interpretations: None,
                    });
                }
            }
        }
        findings
    }
}

struct BoundViolationRule;

impl LintRule for BoundViolationRule {
    fn name(&self) -> &'static str {
        "bound-violation"
    }

    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        for loc in walk(policy) {
            let Some(op) = registry.lookup(&loc.constraint.left_operand) else {
                continue;
            };
            let Some(v) = loc.constraint.right_operand.as_decimal() else {
                continue;
            };
            if let Err(e) = validate_right_operand(op, v) {
                findings.push(LintFinding {
                    severity: Severity::Error,
                    kind: FindingKind::BoundViolation,
                    location: loc.path,
                    message: e.to_string(),
                    interpretations: None,
                });
            }
        }
        findings
    }
}

struct CoverageRule;

impl LintRule for CoverageRule {
    fn name(&self) -> &'static str {
        "coverage"
    }

    fn check(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        let mut kind_counts = std::collections::HashMap::new();
        for rule in &policy.rules {
            let n = kind_counts.entry(rule.kind).or_insert(0usize);
            let rule_path = format!("{}[{}]", rule.kind.key(), n);
            *n += 1;
            let atomics: Vec<Constraint> = rule
                .constraints
                .iter()
                .flat_map(|e| match e {
                    ConstraintExpr::Atomic(c) => vec![c.clone()],
                    ConstraintExpr::Logical(l) => l.branches.clone(),
                })
                .collect();
            for base in DIMENSIONAL_BASES {
                let base_iri = format!("{ODRL}{base}");
                let Ok((covered, complete)) = coverage(&atomics, &base_iri, registry) else {
                    continue;
                };
                if !covered.is_empty() && !complete {
                    let all: Vec<Axis> = registry
                        .decompose(&base_iri)
                        .unwrap_or_default()
                        .iter()
                        .map(|op| op.axis)
                        .collect();
                    let missing: Vec<String> = all
                        .iter()
                        .filter(|a| !covered.contains(a))
                        .map(|a| format!("{a:?}"))
                        .collect();
                    findings.push(LintFinding {
                        severity: Severity::Info,
                        kind: FindingKind::IncompleteCoverage,
                        location: rule_path.clone(),
                        message: format!(
                            "{base} is partially constrained; unconstrained axes: {}",
                            missing.join(", ")
                        ),
                        interpretations: None,
                    });
                }
            }
        }
        findings
    }
}

/// Which axes of `base` the constraint set targets, and whether every axis
/// of the decomposition is covered.
pub fn coverage(
    constraints: &[Constraint],
    base: &str,
    registry: &AxisRegistry,
) -> Result<(Vec<Axis>, bool), LintError> {
    if !is_dimensional_base(base) {
        return Err(LintError::NotDimensional(compact(base)));
    }
    let axes = registry
        .decompose(base)
        .map_err(|_| LintError::NotDimensional(compact(base)))?;
    let mut covered = Vec::new();
    for op in &axes {
        if constraints.iter().any(|c| c.left_operand == op.iri) && !covered.contains(&op.axis) {
            covered.push(op.axis);
        }
    }
    let complete = covered.len() == axes.len() && !axes.is_empty();
    Ok((covered, complete))
}

pub struct LintRegistry {
    rules: Vec<Box<dyn LintRule>>,
}

impl LintRegistry {
    pub fn standard() -> LintRegistry {
        LintRegistry {
            rules: vec![
                Box::new(AmbiguityRule),
                Box::new(SelfContradictionRule),
                Box::new(RedundancyRule),
                Box::new(BoundViolationRule),
                Box::new(CoverageRule),
            ],
        }
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.rules.iter().map(|r| r.name()).collect()
    }

    pub fn run(&self, policy: &Policy, registry: &AxisRegistry) -> Vec<LintFinding> {
        self.run_selected(policy, registry, None)
    }

    pub fn run_selected(
        &self,
        policy: &Policy,
        registry: &AxisRegistry,
        names: Option<&[String]>,
    ) -> Vec<LintFinding> {
        let mut findings = Vec::new();
        for rule in &self.rules {
            if let Some(sel) = names {
                if !sel.iter().any(|n| n == rule.name()) {
                    continue;
                }
            }
            findings.extend(rule.check(policy, registry));
        }
        findings.sort_by(|a, b| {
            a.location
                .cmp(&b.location)
                .then(a.kind.cmp(&b.kind))
                .then(a.message.cmp(&b.message))
        });
        findings
    }
}

#[derive(Debug, Serialize)]
pub struct RefinementPair {
    pub upstream_rule: String,
    pub downstream_rule: String,
    pub action: String,
    pub verdict: SubsumptionVerdict,
    pub axes: SubsumptionDetailMap,
}

#[derive(Debug, Serialize)]
pub struct RefinementReport {
    pub verdict: SubsumptionVerdict,
    pub pairs: Vec<RefinementPair>,
    pub findings: Vec<LintFinding>,
}

/// Checks that every downstream rule refines (is subsumed by) its matching
/// upstream rule. Rules match on action IRI and kind; unmatched rules yield
/// Info findings, a refuted pair yields an Error.
pub fn check_refinement(
    upstream: &Policy,
    downstream: &Policy,
    registry: &AxisRegistry,
) -> Result<RefinementReport, LintError> {
    let up = lower_policy(upstream, registry)?;
    let down = lower_policy(downstream, registry)?;
    let mut pairs = Vec::new();
    let mut findings = Vec::new();
    let mut matched_up = vec![false; up.len()];

    for d in &down {
        let mut matched = false;
        for (ui, u) in up.iter().enumerate() {
            if d.action != u.action || d.kind != u.kind {
                continue;
            }
            matched = true;
            matched_up[ui] = true;
            if d.is_branched() || u.is_branched() {
                return Err(LintError::Engine(EngineError::BranchingUnsupported(
                    "refine",
                )));
            }
            let axes = crate::engine::constrained_axes(&[d, u], registry);
            let (v, detail) =
                box_subsumes(&d.branches.branches[0], &u.branches.branches[0], &axes)
                    .map_err(EngineError::from)?;
            if v == SubsumptionVerdict::Refuted {
                let widened: Vec<String> = detail
                    .iter()
                    .filter(|(_, ad)| ad.verdict == SubsumptionVerdict::Refuted)
                    .map(|(iri, _)| compact(iri))
                    .collect();
                findings.push(LintFinding {
                    severity: Severity::Error,
                    kind: FindingKind::RefinementViolation,
                    location: d.path.clone(),
                    message: format!(
                        "downstream rule widens the upstream scope on: {}",
                        widened.join(", ")
                    ),
                    interpretations: None,
                });
            }
            pairs.push(RefinementPair {
                upstream_rule: u.path.clone(),
                downstream_rule: d.path.clone(),
                action: compact(&d.action),
                verdict: v,
                axes: detail.into_iter().map(|(k, v)| (compact(&k), v)).collect(),
            });
        }
        if !matched {
            findings.push(LintFinding {
                severity: Severity::Info,
                kind: FindingKind::RefinementViolation,
                location: d.path.clone(),
                message: format!(
                    "downstream rule for {} has no upstream counterpart",
                    compact(&d.action)
                ),
                interpretations: None,
            });
        }
    }
    for (ui, u) in up.iter().enumerate() {
        if !matched_up[ui] {
            findings.push(LintFinding {
                severity: Severity::Info,
                kind: FindingKind::RefinementViolation,
                location: u.path.clone(),
                message: format!(
                    "upstream rule for {} has no downstream counterpart",
                    compact(&u.action)
                ),
                interpretations: None,
            });
        }
    }
    if pairs.is_empty() {
        return Err(LintError::NoComparableRules);
    }
    let verdict = if pairs.iter().any(|p| p.verdict == SubsumptionVerdict::Refuted) {
        SubsumptionVerdict::Refuted
    } else if pairs.iter().all(|p| p.verdict == SubsumptionVerdict::Confirmed) {
        SubsumptionVerdict::Confirmed
    } else {
        SubsumptionVerdict::Unknown
    };
    findings.sort_by(|a, b| a.location.cmp(&b.location).then(a.kind.cmp(&b.kind)));
    Ok(RefinementReport {
        verdict,
        pairs,
        findings,
    })
}

/// Renders findings as human-readable text, one line per finding.
pub fn findings_text(findings: &[LintFinding]) -> String {
    let mut out = String::new();
    for f in findings {
        out.push_str(&format!(
            "{:?} {:?} at {}: {}\n",
            f.severity, f.kind, f.location, f.message
        ));
    }
    out
}
