//! Data model and parser for the supported ODRL policy subset.
//!
//! Input is a constrained JSON subset of ODRL JSON-LD: the keys `uid`,
//! `profile`, `permission`, `prohibition`, `obligation`, `action`,
//! `constraint`, `and`, `or`, `xone`, `leftOperand`, `operator`,
//! `rightOperand`, `unit`. Only the fixed prefixes `odrl:` and `oax:` are
//! honoured; there is no general JSON-LD context processing.

use indexmap::IndexMap;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::numeric::{format_decimal, parse_decimal, Rat};
use crate::profile::{OAX, ODRL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Eq,
    Neq,
    Lt,
    Lteq,
    Gt,
    Gteq,
    IsA,
    HasPart,
    IsPartOf,
    IsAllOf,
    IsAnyOf,
    IsNoneOf,
}

impl Operator {
    pub const ALL: [Operator; 12] = [
        Operator::Eq,
        Operator::Neq,
        Operator::Lt,
        Operator::Lteq,
        Operator::Gt,
        Operator::Gteq,
        Operator::IsA,
        Operator::HasPart,
        Operator::IsPartOf,
        Operator::IsAllOf,
        Operator::IsAnyOf,
        Operator::IsNoneOf,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Operator::Eq => "eq",
            Operator::Neq => "neq",
            Operator::Lt => "lt",
            Operator::Lteq => "lteq",
            Operator::Gt => "gt",
            Operator::Gteq => "gteq",
            Operator::IsA => "isA",
            Operator::HasPart => "hasPart",
            Operator::IsPartOf => "isPartOf",
            Operator::IsAllOf => "isAllOf",
            Operator::IsAnyOf => "isAnyOf",
            Operator::IsNoneOf => "isNoneOf",
        }
    }

    pub fn from_name(name: &str) -> Option<Operator> {
        Operator::ALL.into_iter().find(|op| op.name() == name)
    }

    /// The five operators admitted in the dimensional setting.
    pub fn is_dimensional(&self) -> bool {
        matches!(
            self,
            Operator::Eq | Operator::Lt | Operator::Lteq | Operator::Gt | Operator::Gteq
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RightOperand {
    Decimal(Rat),
    Text(String),
}

impl RightOperand {
    pub fn as_decimal(&self) -> Option<&Rat> {
        match self {
            RightOperand::Decimal(r) => Some(r),
            RightOperand::Text(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    /// Full IRI after prefix expansion.
    pub left_operand: String,
    pub operator: Operator,
    pub right_operand: RightOperand,
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
    Xone,
}

impl Connective {
    pub fn key(&self) -> &'static str {
        match self {
            Connective::And => "and",
            Connective::Or => "or",
            Connective::Xone => "xone",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LogicalConstraint {
    pub connective: Connective,
    pub branches: Vec<Constraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintExpr {
    Atomic(Constraint),
    Logical(LogicalConstraint),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Permission,
    Prohibition,
    Obligation,
}

impl RuleKind {
    pub fn key(&self) -> &'static str {
        match self {
            RuleKind::Permission => "permission",
            RuleKind::Prohibition => "prohibition",
            RuleKind::Obligation => "obligation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub kind: RuleKind,
    pub action: String,
    pub constraints: Vec<ConstraintExpr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Policy {
    pub uid: String,
    pub profile: Option<String>,
    pub rules: Vec<Rule>,
}

/// Observable per-axis values a request is evaluated against.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExecutionContext {
    pub values: IndexMap<String, Rat>,
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown IRI prefix {0:?}")]
    UnknownPrefix(String),
    #[error("duplicate context key {0:?}")]
    DuplicateKey(String),
    #[error("non-numeric context value for {key:?}: {value:?}")]
    NonNumeric { key: String, value: String },
}

/// Expands a compact IRI against the fixed prefix map. Bare names without a
/// colon resolve against the odrl: vocabulary.
pub fn expand(s: &str) -> Result<String, ModelError> {
    if s.contains("://") {
        return Ok(s.to_string());
    }
    match s.split_once(':') {
        Some(("odrl", rest)) => Ok(format!("{ODRL}{rest}")),
        Some(("oax", rest)) => Ok(format!("{OAX}{rest}")),
        Some((prefix, _)) => Err(ModelError::UnknownPrefix(prefix.to_string())),
        None => Ok(format!("{ODRL}{s}")),
    }
}

/// Compacts a full IRI back to `odrl:`/`oax:` form where possible.
pub fn compact(iri: &str) -> String {
    if let Some(rest) = iri.strip_prefix(ODRL) {
        format!("odrl:{rest}")
    } else if let Some(rest) = iri.strip_prefix(OAX) {
        format!("oax:{rest}")
    } else {
        iri.to_string()
    }
}

fn obj<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, ModelError> {
    v.as_object()
        .ok_or_else(|| ModelError::Schema(format!("{what} must be a JSON object")))
}

fn str_field(m: &Map<String, Value>, key: &str, what: &str) -> Result<String, ModelError> {
    match m.get(key) {
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(ModelError::Schema(format!("{what}.{key} must be a string"))),
        None => Err(ModelError::Schema(format!("{what} is missing {key:?}"))),
    }
}

fn parse_right_operand(v: &Value) -> Result<RightOperand, ModelError> {
    match v {
        Value::Number(n) => {
            // arbitrary_precision keeps the literal text, so decimals stay exact
            let r = parse_decimal(&n.to_string())
                .map_err(|e| ModelError::Schema(format!("rightOperand: {e}")))?;
            Ok(RightOperand::Decimal(r))
        }
        Value::String(s) => match parse_decimal(s) {
            Ok(r) => Ok(RightOperand::Decimal(r)),
            Err(_) => Ok(RightOperand::Text(s.clone())),
        },
        other => Err(ModelError::Schema(format!(
            "rightOperand must be a number or string, got {other}"
        ))),
    }
}

const ATOMIC_KEYS: [&str; 4] = ["leftOperand", "operator", "rightOperand", "unit"];

fn parse_atomic(m: &Map<String, Value>) -> Result<Constraint, ModelError> {
    for key in m.keys() {
        if !ATOMIC_KEYS.contains(&key.as_str()) {
            return Err(ModelError::Schema(format!(
                "unknown constraint key {key:?} (expected one of {ATOMIC_KEYS:?} or a connective)"
            )));
        }
    }
    let left = expand(&str_field(m, "leftOperand", "constraint")?)?;
    let op_text = str_field(m, "operator", "constraint")?;
    let op_name = op_text
        .strip_prefix("odrl:")
        .or_else(|| op_text.strip_prefix(ODRL))
        .unwrap_or(&op_text);
    let operator = Operator::from_name(op_name)
        .ok_or_else(|| ModelError::Schema(format!("unknown operator {op_text:?}")))?;
    let right = parse_right_operand(
        m.get("rightOperand")
            .ok_or_else(|| ModelError::Schema("constraint is missing \"rightOperand\"".into()))?,
    )?;
    let unit = match m.get("unit") {
        None => None,
        Some(Value::String(s)) => Some(expand(s)?),
        Some(_) => return Err(ModelError::Schema("unit must be a string".into())),
    };
    Ok(Constraint {
        left_operand: left,
        operator,
        right_operand: right,
        unit,
    })
}

fn parse_constraint_expr(v: &Value) -> Result<ConstraintExpr, ModelError> {
    let m = obj(v, "constraint")?;
    let connective_keys: Vec<&str> = m
        .keys()
        .map(|k| k.as_str())
        .filter(|k| !ATOMIC_KEYS.contains(k))
        .collect();
    if connective_keys.is_empty() {
        return Ok(ConstraintExpr::Atomic(parse_atomic(m)?));
    }
    if connective_keys.len() > 1 || m.len() > 1 {
        return Err(ModelError::Schema(format!(
            "logical constraint must have exactly one connective key, got {:?}",
            m.keys().collect::<Vec<_>>()
        )));
    }
    let key = connective_keys[0];
    let connective = match key {
        "and" => Connective::And,
        "or" => Connective::Or,
        "xone" => Connective::Xone,
        other => {
            return Err(ModelError::Schema(format!(
                "unknown connective key {other:?}"
            )))
        }
    };
    let arr = m[key]
        .as_array()
        .ok_or_else(|| ModelError::Schema(format!("{key:?} must hold an array")))?;
    let branches = arr
        .iter()
        .map(|b| parse_atomic(obj(b, "logical branch")?))
        .collect::<Result<Vec<_>, _>>()?;
    if branches.is_empty() {
        return Err(ModelError::Schema(format!("{key:?} needs at least one branch")));
    }
    if connective != Connective::And && branches.len() < 2 {
        return Err(ModelError::Schema(format!(
            "{key:?} needs at least two branches, got {}",
            branches.len()
        )));
    }
    Ok(ConstraintExpr::Logical(LogicalConstraint {
        connective,
        branches,
    }))
}

fn parse_rule(v: &Value, kind: RuleKind) -> Result<Rule, ModelError> {
    let m = obj(v, kind.key())?;
    for key in m.keys() {
        if !["action", "constraint"].contains(&key.as_str()) {
            return Err(ModelError::Schema(format!(
                "unknown rule key {key:?} in {}",
                kind.key()
            )));
        }
    }
    let action = expand(&str_field(m, "action", kind.key())?)?;
    let constraints = match m.get("constraint") {
        None => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(parse_constraint_expr)
            .collect::<Result<Vec<_>, _>>()?,
        Some(_) => {
            return Err(ModelError::Schema(
                "\"constraint\" must be an array".into(),
            ))
        }
    };
    Ok(Rule {
        kind,
        action,
        constraints,
    })
}

/// Parses a policy document. A bare constraint array means implicit And.
pub fn parse_policy(text: &str) -> Result<Policy, ModelError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ModelError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let m = obj(&value, "policy")?;
    for key in m.keys() {
        if !["uid", "profile", "permission", "prohibition", "obligation"]
            .contains(&key.as_str())
        {
            return Err(ModelError::Schema(format!("unknown policy key {key:?}")));
        }
    }
    let uid = str_field(m, "uid", "policy")?;
    if uid.is_empty() {
        return Err(ModelError::Schema("policy uid must be non-empty".into()));
    }
    let profile = match m.get("profile") {
        None => None,
        Some(Value::String(s)) => Some(expand(s)?),
        Some(_) => return Err(ModelError::Schema("profile must be a string".into())),
    };
    let mut rules = Vec::new();
    for kind in [RuleKind::Permission, RuleKind::Prohibition, RuleKind::Obligation] {
        if let Some(v) = m.get(kind.key()) {
            let arr = v
                .as_array()
                .ok_or_else(|| ModelError::Schema(format!("{:?} must be an array", kind.key())))?;
            for item in arr {
                rules.push(parse_rule(item, kind)?);
            }
        }
    }
    Ok(Policy { uid, profile, rules })
}

fn right_operand_value(r: &RightOperand) -> Value {
    match r {
        RightOperand::Decimal(d) => {
            let n: serde_json::Number = format_decimal(d)
                .parse()
                .expect("decimal renders as a JSON number");
            Value::Number(n)
        }
        RightOperand::Text(s) => Value::String(s.clone()),
    }
}

fn atomic_value(c: &Constraint) -> Value {
    let mut m = Map::new();
    m.insert("leftOperand".into(), Value::String(compact(&c.left_operand)));
    m.insert(
        "operator".into(),
        Value::String(format!("odrl:{}", c.operator.name())),
    );
    m.insert("rightOperand".into(), right_operand_value(&c.right_operand));
    if let Some(u) = &c.unit {
        m.insert("unit".into(), Value::String(compact(u)));
    }
    Value::Object(m)
}

/// Serialises a policy back to the documented JSON subset.
pub fn serialize_policy(p: &Policy) -> String {
    let mut root = Map::new();
    root.insert("uid".into(), Value::String(p.uid.clone()));
    if let Some(profile) = &p.profile {
        root.insert("profile".into(), Value::String(compact(profile)));
    }
    for kind in [RuleKind::Permission, RuleKind::Prohibition, RuleKind::Obligation] {
        let items: Vec<Value> = p
            .rules
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| {
                let mut m = Map::new();
                m.insert("action".into(), Value::String(compact(&r.action)));
                if !r.constraints.is_empty() {
                    let cs: Vec<Value> = r
                        .constraints
                        .iter()
                        .map(|expr| match expr {
                            ConstraintExpr::Atomic(c) => atomic_value(c),
                            ConstraintExpr::Logical(l) => {
                                let branches: Vec<Value> =
                                    l.branches.iter().map(atomic_value).collect();
                                let mut lm = Map::new();
                                lm.insert(l.connective.key().into(), Value::Array(branches));
                                Value::Object(lm)
                            }
                        })
                        .collect();
                    m.insert("constraint".into(), Value::Array(cs));
                }
                Value::Object(m)
            })
            .collect();
        if !items.is_empty() || kind == RuleKind::Permission {
            root.insert(kind.key().into(), Value::Array(items));
        }
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("policy serialises")
}

/// Convenience aliases accepted for context keys alongside full and compact
/// IRIs. Bare axis-operand names resolve against the oax: namespace.
const CONTEXT_ALIASES: [(&str, &str); 12] = [
    ("width", "absoluteSizeWidth"),
    ("height", "absoluteSizeHeight"),
    ("depth", "absoluteSizeDepth"),
    ("x", "absoluteSpatialPositionX"),
    ("y", "absoluteSpatialPositionY"),
    ("z", "absoluteSpatialPositionZ"),
    ("longitude", "spatialCoordinatesLongitude"),
    ("lon", "spatialCoordinatesLongitude"),
    ("latitude", "spatialCoordinatesLatitude"),
    ("lat", "spatialCoordinatesLatitude"),
    ("altitude", "spatialCoordinatesAltitude"),
    ("alt", "spatialCoordinatesAltitude"),
];

const OAX_LOCAL_NAMES: [&str; 15] = [
    "absoluteSizeWidth",
    "absoluteSizeHeight",
    "absoluteSizeDepth",
    "relativeSizeWidth",
    "relativeSizeHeight",
    "relativeSizeDepth",
    "absoluteSpatialPositionX",
    "absoluteSpatialPositionY",
    "absoluteSpatialPositionZ",
    "relativeSpatialPositionX",
    "relativeSpatialPositionY",
    "relativeSpatialPositionZ",
    "spatialCoordinatesLongitude",
    "spatialCoordinatesLatitude",
    "spatialCoordinatesAltitude",
];

pub fn resolve_context_key(key: &str) -> Result<String, ModelError> {
    if let Some((_, name)) = CONTEXT_ALIASES.iter().find(|(a, _)| *a == key) {
        return Ok(format!("{OAX}{name}"));
    }
    if !key.contains(':') && OAX_LOCAL_NAMES.contains(&key) {
        return Ok(format!("{OAX}{key}"));
    }
    expand(key)
}

fn context_insert(
    ctx: &mut ExecutionContext,
    key: &str,
    value: Rat,
) -> Result<(), ModelError> {
    let iri = resolve_context_key(key)?;
    if ctx.values.insert(iri, value).is_some() {
        return Err(ModelError::DuplicateKey(key.to_string()));
    }
    Ok(())
}

/// Parses comma-separated `axisOperand=decimal` CLI pairs.
pub fn parse_context_pairs(text: &str) -> Result<ExecutionContext, ModelError> {
    let mut ctx = ExecutionContext::default();
    for pair in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, raw) = pair.split_once('=').ok_or_else(|| {
            ModelError::Schema(format!("context entry {pair:?} is not key=value"))
        })?;
        let value = parse_decimal(raw).map_err(|_| ModelError::NonNumeric {
            key: key.to_string(),
            value: raw.to_string(),
        })?;
        context_insert(&mut ctx, key.trim(), value)?;
    }
    Ok(ctx)
}

/// Parses a JSON object of context values.
pub fn parse_context_json(text: &str) -> Result<ExecutionContext, ModelError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ModelError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let m = obj(&value, "context")?;
    let mut ctx = ExecutionContext::default();
    for (key, v) in m {
        let value = match v {
            Value::Number(n) => parse_decimal(&n.to_string()),
            Value::String(s) => parse_decimal(s),
            _ => Err(crate::numeric::DecimalParseError(v.to_string())),
        }
        .map_err(|_| ModelError::NonNumeric {
            key: key.clone(),
            value: v.to_string(),
        })?;
        context_insert(&mut ctx, key, value)?;
    }
    Ok(ctx)
}
