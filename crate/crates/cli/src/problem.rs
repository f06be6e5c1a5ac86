//! Problem documents: parsing with JSON-pointer diagnostics, and canonical
//! serialization.

use serde::Serialize;
use serde_json::{Map, Value};
use twind_core::RationalWeight;

use crate::error::CliError;

/// How the subgroup H is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SubgroupSpec {
    /// `t`, `g`, `levi:1,2`, `so3xso4`, `a2long`, `b4`, `a1xa1`, `long`.
    Preset(String),
    /// Generators given as 0-based indices into the positive roots.
    Roots { roots: Vec<usize> },
    /// Generators given as 0-based indices into the simple roots.
    Simple { simple: Vec<usize> },
}

impl Default for SubgroupSpec {
    fn default() -> Self {
        SubgroupSpec::Preset("g".into())
    }
}

/// A weight: integer coordinates, an exact rational vector, or an expression.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Integral(Vec<i64>),
    Rational(RationalWeight),
    Expr(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermSpec {
    pub coeff: i64,
    pub weight: WeightSpec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum InputSpec {
    Expr(String),
    Terms {
        #[serde(skip_serializing_if = "Option::is_none")]
        twist: Option<RationalWeight>,
        terms: Vec<TermSpec>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InductionKind {
    Twisted,
    Holomorphic,
    Spin,
    Spinc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EulerKind {
    Dirac,
    Hdr,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ProblemDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub subgroup: SubgroupSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<WeightSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<InputSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<WeightSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<WeightSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<InductionKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_weyl_order: Option<u64>,
}

pub const FIELDS: &[&str] = &[
    "group",
    "subgroup",
    "twist",
    "input",
    "weight",
    "tau",
    "gamma",
    "signs",
    "kind",
    "euler",
    "trials",
    "suite",
    "seed",
    "max_weyl_order",
];

fn violation<T>(pointer: &str, message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Schema {
        pointer: pointer.to_string(),
        message: message.into(),
    })
}

fn child(pointer: &str, key: impl std::fmt::Display) -> String {
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{key}")
}

fn int(v: &Value, p: &str) -> Result<i64, CliError> {
    v.as_i64().map_or_else(
        || violation(p, format!("expected an integer, found {v}")),
        Ok,
    )
}

fn uint(v: &Value, p: &str) -> Result<u64, CliError> {
    v.as_u64().map_or_else(
        || violation(p, format!("expected a non-negative integer, found {v}")),
        Ok,
    )
}

fn string(v: &Value, p: &str) -> Result<String, CliError> {
    v.as_str().map_or_else(
        || violation(p, format!("expected a string, found {v}")),
        |s| Ok(s.to_string()),
    )
}

fn array<'a>(v: &'a Value, p: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .map_or_else(|| violation(p, format!("expected an array, found {v}")), Ok)
}

fn object<'a>(v: &'a Value, p: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, CliError> {
    let Some(m) = v.as_object() else {
        return violation(p, format!("expected an object, found {v}"));
    };
    if let Some(k) = m.keys().find(|k| !allowed.contains(&k.as_str())) {
        return violation(&child(p, k), "unknown field");
    }
    Ok(m)
}

fn int_list(v: &Value, p: &str) -> Result<Vec<i64>, CliError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, x)| int(x, &child(p, i)))
        .collect()
}

fn index_list(v: &Value, p: &str) -> Result<Vec<usize>, CliError> {
    array(v, p)?
        .iter()
        .enumerate()
        .map(|(i, x)| uint(x, &child(p, i)).map(|u| u as usize))
        .collect()
}

fn rational(v: &Value, p: &str) -> Result<RationalWeight, CliError> {
    let m = object(v, p, &["num", "den"])?;
    let Some(num) = m.get("num") else {
        return violation(&child(p, "num"), "missing field");
    };
    let num = int_list(num, &child(p, "num"))?;
    let den = match m.get("den") {
        Some(d) => int(d, &child(p, "den"))?,
        None => 1,
    };
    if den <= 0 {
        return violation(&child(p, "den"), "denominator must be positive");
    }
    Ok(RationalWeight::new(num, den))
}

fn weight(v: &Value, p: &str) -> Result<WeightSpec, CliError> {
    match v {
        Value::String(s) => Ok(WeightSpec::Expr(s.clone())),
        Value::Array(_) => Ok(WeightSpec::Integral(int_list(v, p)?)),
        Value::Object(_) => Ok(WeightSpec::Rational(rational(v, p)?)),
        _ => violation(
            p,
            format!("expected a weight (array, {{num, den}} or expression), found {v}"),
        ),
    }
}

fn subgroup(v: &Value, p: &str) -> Result<SubgroupSpec, CliError> {
    match v {
        Value::String(s) => Ok(SubgroupSpec::Preset(s.clone())),
        Value::Object(_) => {
            let m = object(v, p, &["roots", "simple"])?;
            match (m.get("roots"), m.get("simple")) {
                (Some(r), None) => Ok(SubgroupSpec::Roots {
                    roots: index_list(r, &child(p, "roots"))?,
                }),
                (None, Some(s)) => Ok(SubgroupSpec::Simple {
                    simple: index_list(s, &child(p, "simple"))?,
                }),
                _ => violation(p, "expected exactly one of `roots` or `simple`"),
            }
        }
        _ => violation(
            p,
            format!("expected a preset name or a root list, found {v}"),
        ),
    }
}

fn input(v: &Value, p: &str) -> Result<InputSpec, CliError> {
    match v {
        Value::String(s) => Ok(InputSpec::Expr(s.clone())),
        Value::Object(_) => {
            let m = object(v, p, &["twist", "terms"])?;
            let twist = m
                .get("twist")
                .map(|t| rational(t, &child(p, "twist")))
                .transpose()?;
            let Some(list) = m.get("terms") else {
                return violation(&child(p, "terms"), "missing field");
            };
            let tp = child(p, "terms");
            let mut terms = Vec::new();
            for (i, t) in array(list, &tp)?.iter().enumerate() {
                let ti = child(&tp, i);
                let tm = object(t, &ti, &["coeff", "weight"])?;
                let coeff = match tm.get("coeff") {
                    Some(c) => int(c, &child(&ti, "coeff"))?,
                    None => return violation(&child(&ti, "coeff"), "missing field"),
                };
                let w = match tm.get("weight") {
                    Some(w) => weight(w, &child(&ti, "weight"))?,
                    None => return violation(&child(&ti, "weight"), "missing field"),
                };
                terms.push(TermSpec { coeff, weight: w });
            }
            Ok(InputSpec::Terms { twist, terms })
        }
        _ => violation(
            p,
            format!("expected an expression or {{terms: [...]}}, found {v}"),
        ),
    }
}

fn signs(v: &Value, p: &str) -> Result<Vec<i64>, CliError> {
    let s = int_list(v, p)?;
    if let Some(i) = s.iter().position(|x| x.abs() != 1) {
        return violation(&child(p, i), "signs must be +1 or -1");
    }
    Ok(s)
}

pub fn parse_kind(s: &str, p: &str) -> Result<InductionKind, CliError> {
    match s {
        "twisted" => Ok(InductionKind::Twisted),
        "holomorphic" => Ok(InductionKind::Holomorphic),
        "spin" => Ok(InductionKind::Spin),
        "spinc" => Ok(InductionKind::Spinc),
        _ => violation(
            p,
            format!("unknown induction kind `{s}` (twisted, holomorphic, spin, spinc)"),
        ),
    }
}

pub fn parse_euler(s: &str, p: &str) -> Result<EulerKind, CliError> {
    match s {
        "dirac" => Ok(EulerKind::Dirac),
        "hdr" => Ok(EulerKind::Hdr),
        _ => violation(p, format!("unknown operator `{s}` (dirac, hdr)")),
    }
}

/// Parses and structurally validates a problem document. References to the
/// root datum (root indices, vector lengths) are checked once the datum is
/// built; see [`crate::context::Context::new`].
pub fn parse_problem(text: &str) -> Result<ProblemDocument, CliError> {
    let v: Value = serde_json::from_str(text).map_err(|e| CliError::Schema {
        pointer: String::new(),
        message: format!("malformed JSON: {e}"),
    })?;
    problem_from_value(&v)
}

pub fn problem_from_value(v: &Value) -> Result<ProblemDocument, CliError> {
    let m = object(v, "", FIELDS)?;
    let get = |k: &str| m.get(k).filter(|x| !x.is_null());
    let p = |k: &str| child("", k);
    Ok(ProblemDocument {
        group: get("group").map(|x| string(x, &p("group"))).transpose()?,
        subgroup: get("subgroup")
            .map(|x| subgroup(x, &p("subgroup")))
            .transpose()?
            .unwrap_or_default(),
        twist: get("twist").map(|x| weight(x, &p("twist"))).transpose()?,
        input: get("input").map(|x| input(x, &p("input"))).transpose()?,
        weight: get("weight").map(|x| weight(x, &p("weight"))).transpose()?,
        tau: get("tau").map(|x| weight(x, &p("tau"))).transpose()?,
        gamma: get("gamma").map(|x| int_list(x, &p("gamma"))).transpose()?,
        signs: get("signs").map(|x| signs(x, &p("signs"))).transpose()?,
        kind: get("kind")
            .map(|x| string(x, &p("kind")).and_then(|s| parse_kind(&s, &p("kind"))))
            .transpose()?,
        euler: get("euler")
            .map(|x| string(x, &p("euler")).and_then(|s| parse_euler(&s, &p("euler"))))
            .transpose()?,
        trials: get("trials")
            .map(|x| uint(x, &p("trials")).map(|u| u as usize))
            .transpose()?,
        suite: get("suite").map(|x| string(x, &p("suite"))).transpose()?,
        seed: get("seed")
            .map(|x| uint(x, &p("seed")))
            .transpose()?
            .unwrap_or(0),
        max_weyl_order: get("max_weyl_order")
            .map(|x| uint(x, &p("max_weyl_order")))
            .transpose()?,
    })
}

impl ProblemDocument {
    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("problem documents serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointer(text: &str) -> String {
        match parse_problem(text).unwrap_err() {
            CliError::Schema { pointer, .. } => pointer,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn minimal_document_gets_defaults() {
        let d = parse_problem(r#"{"group": "A2"}"#).unwrap();
        assert_eq!(d.group.as_deref(), Some("A2"));
        assert_eq!(d.subgroup, SubgroupSpec::Preset("g".into()));
        assert_eq!(d.seed, 0);
        assert!(d.input.is_none());
    }

    #[test]
    fn round_trip() {
        let text = r#"{
            "group": "B3:spin",
            "subgroup": {"roots": [0, 2, 5]},
            "twist": {"num": [1, 0, 0], "den": 2},
            "input": {"terms": [{"coeff": -2, "weight": [1, 0, 0]}, {"coeff": 3, "weight": "rhoM"}]},
            "weight": "rhoM + w1",
            "gamma": [0, 0, 0],
            "signs": [1, -1],
            "kind": "spinc",
            "euler": "hdr",
            "trials": 5,
            "suite": "all",
            "seed": 11,
            "max_weyl_order": 100
        }"#;
        let d = parse_problem(text).unwrap();
        let again = problem_from_value(&d.to_value()).unwrap();
        assert_eq!(d, again);
        assert_eq!(
            serde_json::to_string(&again.to_value()).unwrap(),
            serde_json::to_string(&d.to_value()).unwrap()
        );
    }

    #[test]
    fn violations_carry_pointers() {
        assert_eq!(
            pointer(r#"{"group": "A2", "input": {"terms": [{"coeff": 1.5, "weight": [0, 0]}]}}"#),
            "/input/terms/0/coeff"
        );
        assert_eq!(
            pointer(r#"{"group": "A2", "subgroup": {"roots": [0, -1]}}"#),
            "/subgroup/roots/1"
        );
        assert_eq!(pointer(r#"{"group": 3}"#), "/group");
        assert_eq!(pointer(r#"{"group": "A2", "colour": 1}"#), "/colour");
        assert_eq!(
            pointer(r#"{"group": "A2", "twist": {"num": [1, 1], "den": 0}}"#),
            "/twist/den"
        );
        assert_eq!(pointer(r#"{"group": "A2", "signs": [1, 2]}"#), "/signs/1");
        assert_eq!(pointer(r#"{"group": "A2", "kind": "dolbeault"}"#), "/kind");
        assert_eq!(pointer("{"), "");
        assert_eq!(pointer("[]"), "");
    }

    #[test]
    fn pointer_escaping() {
        assert_eq!(child("", "a/b~c"), "/a~1b~0c");
    }
}
