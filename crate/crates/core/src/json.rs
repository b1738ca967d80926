//! JSON encodings of steps, points, valuations and families.
//!
//! Steps are strings (`"0"`, `"-1/2"`, `"inf"`); integers are accepted on
//! input. A point is an array of steps.

use serde_json::{json, Map, Value};

use crate::arith::{parse_poly, poly_to_string, DEFAULT_NAMES};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySet, FiberLabel};
use crate::tree::{parse_rational, Point, Step};
use crate::valuation::Valuation;

fn bad(what: impl Into<String>) -> Error {
    Error::Json(what.into())
}

pub fn step_to_json(s: &Step) -> Value {
    Value::String(s.to_string())
}

pub fn step_from_json(v: &Value) -> Result<Step> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(Step::int)
            .ok_or_else(|| bad(format!("step {n} is not an integer"))),
        other => Err(bad(format!("expected a step, found {other}"))),
    }
}

pub fn steps_to_json(path: &[Step]) -> Value {
    Value::Array(path.iter().map(step_to_json).collect())
}

pub fn steps_from_json(v: &Value) -> Result<Vec<Step>> {
    v.as_array()
        .ok_or_else(|| bad(format!("expected an array of steps, found {v}")))?
        .iter()
        .map(step_from_json)
        .collect()
}

pub fn point_to_json(p: &Point) -> Value {
    steps_to_json(p.path())
}

pub fn point_from_json(v: &Value) -> Result<Point> {
    Ok(Point::from_path(&steps_from_json(v)?))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing field \"{key}\"")))
}

fn object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| bad(format!("expected an object, found {v}")))
}

fn kind(obj: &Map<String, Value>) -> Result<&str> {
    field(obj, "kind")?
        .as_str()
        .ok_or_else(|| bad("\"kind\" must be a string"))
}

fn poly_field(obj: &Map<String, Value>, key: &str) -> Result<crate::Poly> {
    let text = field(obj, key)?
        .as_str()
        .ok_or_else(|| bad(format!("\"{key}\" must be an expression string")))?;
    parse_poly(text)
}

pub fn valuation_to_json(v: &Valuation) -> Value {
    match v {
        Valuation::FirstKind(h) => json!({"kind": "first", "h": poly_to_string(h, &DEFAULT_NAMES)}),
        Valuation::SecondKind(p) => json!({"kind": "second", "point": point_to_json(p)}),
        Valuation::Periodic { prefix, period } => json!({
            "kind": "minimal",
            "prefix": steps_to_json(prefix),
            "period": steps_to_json(period),
        }),
        Valuation::CurveBranch(b) => {
            json!({"kind": "curve", "h": poly_to_string(b.h(), &DEFAULT_NAMES)})
        }
    }
}

pub fn valuation_from_json(v: &Value) -> Result<Valuation> {
    let obj = object(v)?;
    match kind(obj)? {
        "first" => Valuation::first_kind(poly_field(obj, "h")?),
        "second" => Ok(Valuation::second_kind(point_from_json(field(
            obj, "point",
        )?)?)),
        "minimal" => Valuation::periodic(
            steps_from_json(field(obj, "prefix")?)?,
            steps_from_json(field(obj, "period")?)?,
        ),
        "monomial" => {
            let w = |k: &str| -> Result<u64> {
                field(obj, k)?
                    .as_u64()
                    .ok_or_else(|| bad(format!("\"{k}\" must be a positive integer")))
            };
            Valuation::monomial(w("a")?, w("b")?)
        }
        "curve" => Valuation::curve(poly_field(obj, "h")?),
        other => Err(bad(format!("unknown valuation kind \"{other}\""))),
    }
}

pub fn family_to_json(f: &Family) -> Value {
    match f {
        Family::Singleton(p) => json!({"kind": "singleton", "point": point_to_json(p)}),
        Family::Fiber {
            base,
            excluded,
            tail,
            label,
        } => {
            let mut v = json!({
                "kind": "fiber",
                "base": point_to_json(base),
                "excluded": Value::Array(excluded.iter().map(step_to_json).collect()),
                "tail": steps_to_json(tail),
            });
            if let Some(FiberLabel::NegInverse) = label {
                v["label"] = json!("neg-inverse");
            }
            v
        }
        Family::Chain { valuation, from } => json!({
            "kind": "chain",
            "valuation": valuation_to_json(valuation),
            "from": from,
        }),
        Family::Siblings { valuation, offset } => json!({
            "kind": "siblings",
            "valuation": valuation_to_json(valuation),
            "offset": offset.to_string(),
        }),
    }
}

pub fn family_from_json(v: &Value) -> Result<Family> {
    let obj = object(v)?;
    match kind(obj)? {
        "singleton" => Ok(Family::Singleton(point_from_json(field(obj, "point")?)?)),
        "fiber" => {
            let base = point_from_json(field(obj, "base")?)?;
            let excluded = match obj.get("excluded") {
                Some(e) => steps_from_json(e)?,
                None => Vec::new(),
            };
            let tail = match obj.get("tail") {
                Some(t) => steps_from_json(t)?,
                None => Vec::new(),
            };
            let fam = Family::fiber(base, excluded, tail);
            match obj.get("label").map(|l| l.as_str()) {
                None => Ok(fam),
                Some(Some("neg-inverse")) => Ok(fam.with_label(FiberLabel::NegInverse)),
                Some(other) => Err(bad(format!("unknown fiber label {other:?}"))),
            }
        }
        "chain" => {
            let from = field(obj, "from")?
                .as_u64()
                .ok_or_else(|| bad("\"from\" must be a non-negative integer"))?;
            Family::chain(
                valuation_from_json(field(obj, "valuation")?)?,
                from as usize,
            )
        }
        "siblings" => {
            let offset = match field(obj, "offset")? {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => n.as_i64().map(crate::arith::rat),
                _ => None,
            }
            .ok_or_else(|| bad("\"offset\" must be a rational"))?;
            Family::siblings(valuation_from_json(field(obj, "valuation")?)?, offset)
        }
        other => Err(bad(format!("unknown family kind \"{other}\""))),
    }
}

pub fn family_set_to_json(s: &FamilySet) -> Value {
    Value::Array(s.parts.iter().map(family_to_json).collect())
}

/// A family set is an array of families; a single family object is also accepted.
pub fn family_set_from_json(v: &Value) -> Result<FamilySet> {
    match v {
        Value::Array(parts) => Ok(FamilySet::new(
            parts.iter().map(family_from_json).collect::<Result<_>>()?,
        )),
        Value::Object(_) => Ok(FamilySet::new(vec![family_from_json(v)?])),
        other => Err(bad(format!("expected an array of families, found {other}"))),
    }
}

pub fn parse_family_set(text: &str) -> Result<FamilySet> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    family_set_from_json(&v)
}
