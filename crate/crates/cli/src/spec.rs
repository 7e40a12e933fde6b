//! JSON spec files: a representation as weighted bodies, or a valuation of
//! the line as a pair of breakpoint tables.

use std::fmt;

use intval::geom::{ConvexBody, Point};
use intval::line::{Knot, StepFunction, Valuation1D};
use intval::valuation::{Representation, Term};
use intval::{parse_scalar, Rational};
use serde_json::{json, Map, Value};

/// Where in the document something went wrong, plus what.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub at: String,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.at, self.message)
    }
}

impl std::error::Error for SpecError {}

fn fail<T>(at: &str, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        at: at.to_string(),
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Terms(Representation<Rational>),
    Line(Valuation1D<Rational>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spec {
    pub model: Model,
    pub meta: Option<Value>,
}

impl Spec {
    pub fn terms(rep: Representation<Rational>) -> Self {
        Spec {
            model: Model::Terms(rep),
            meta: None,
        }
    }

    pub fn dim(&self) -> u8 {
        match &self.model {
            Model::Terms(r) => r.dim(),
            Model::Line(_) => 1,
        }
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| SpecError {
            at: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::from_json(&doc)
    }

    pub fn from_json(doc: &Value) -> Result<Self, SpecError> {
        let Some(obj) = doc.as_object() else {
            return fail("$", "expected an object");
        };
        for key in obj.keys() {
            if !matches!(key.as_str(), "dim" | "terms" | "fg" | "meta") {
                return fail(&format!("$.{key}"), "unknown field");
            }
        }
        let dim = match obj.get("dim").and_then(Value::as_u64) {
            Some(d @ (1 | 2)) => d as u8,
            _ => return fail("$.dim", "expected 1 or 2"),
        };
        let model = match (obj.get("terms"), obj.get("fg")) {
            (Some(t), None) => Model::Terms(parse_terms(t, dim)?),
            (None, Some(fg)) if dim == 1 => Model::Line(parse_fg(fg)?),
            (None, Some(_)) => return fail("$.fg", "breakpoint tables need dim 1"),
            _ => return fail("$", "expected exactly one of \"terms\" or \"fg\""),
        };
        Ok(Spec {
            model,
            meta: obj.get("meta").cloned(),
        })
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("dim".into(), json!(self.dim()));
        match &self.model {
            Model::Terms(rep) => {
                let terms = rep
                    .terms()
                    .iter()
                    .map(|t| json!({"weight": t.weight.to_string(), "body": body_to_json(&t.body, rep.dim())}))
                    .collect();
                obj.insert("terms".into(), Value::Array(terms));
            }
            Model::Line(v) => {
                obj.insert(
                    "fg".into(),
                    json!({"f": table_to_json(v.f()), "g": table_to_json(v.g())}),
                );
            }
        }
        if let Some(meta) = &self.meta {
            obj.insert("meta".into(), meta.clone());
        }
        Value::Object(obj)
    }
}

pub fn parse_rational(v: &Value, at: &str) -> Result<Rational, SpecError> {
    match v {
        Value::String(s) => parse_scalar(s).or_else(|e| fail(at, e.to_string())),
        _ => fail(at, "expected a rational string"),
    }
}

fn parse_point(v: &Value, dim: u8, at: &str) -> Result<Point<Rational>, SpecError> {
    match (dim, v) {
        (1, Value::String(_)) => Ok(Point::new(parse_rational(v, at)?, Rational::from_integer(0.into()))),
        (2, Value::Array(xy)) if xy.len() == 2 => Ok(Point::new(
            parse_rational(&xy[0], &format!("{at}[0]"))?,
            parse_rational(&xy[1], &format!("{at}[1]"))?,
        )),
        (1, _) => fail(at, "expected a rational string"),
        _ => fail(at, "expected a pair of rational strings"),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value, SpecError> {
    match obj.get(key) {
        Some(v) => Ok(v),
        None => fail(at, format!("missing \"{key}\"")),
    }
}

/// `{"kind": ...}` with `at`, `from`/`to`, or `vertices` as the kind needs.
/// In dim 1 coordinates are single rational strings on the line.
pub fn parse_body(v: &Value, dim: u8, at: &str) -> Result<ConvexBody<Rational>, SpecError> {
    let Some(obj) = v.as_object() else {
        return fail(at, "expected a body object");
    };
    let kind = field(obj, "kind", at)?.as_str().unwrap_or_default();
    match kind {
        "empty" => Ok(ConvexBody::Empty),
        "full" if dim == 2 => Ok(ConvexBody::FullPlane),
        "point" => Ok(ConvexBody::Point(parse_point(
            field(obj, "at", at)?,
            dim,
            &format!("{at}.at"),
        )?)),
        "segment" => {
            let a = parse_point(field(obj, "from", at)?, dim, &format!("{at}.from"))?;
            let b = parse_point(field(obj, "to", at)?, dim, &format!("{at}.to"))?;
            Ok(ConvexBody::segment(a, b))
        }
        "polygon" if dim == 2 => {
            let Some(vs) = field(obj, "vertices", at)?.as_array() else {
                return fail(&format!("{at}.vertices"), "expected a list of points");
            };
            let pts = vs
                .iter()
                .enumerate()
                .map(|(i, p)| parse_point(p, 2, &format!("{at}.vertices[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            ConvexBody::polygon(pts).or_else(|e| fail(at, e.to_string()))
        }
        "full" | "polygon" => fail(at, format!("\"{kind}\" needs dim 2")),
        other => fail(&format!("{at}.kind"), format!("unknown kind \"{other}\"")),
    }
}

fn coords(p: &Point<Rational>, dim: u8) -> Value {
    if dim == 1 {
        json!(p.x.to_string())
    } else {
        json!([p.x.to_string(), p.y.to_string()])
    }
}

pub fn body_to_json(b: &ConvexBody<Rational>, dim: u8) -> Value {
    match b {
        ConvexBody::Empty => json!({"kind": "empty"}),
        ConvexBody::FullPlane => json!({"kind": "full"}),
        ConvexBody::Point(p) => json!({"kind": "point", "at": coords(p, dim)}),
        ConvexBody::Segment(a, c) => json!({"kind": "segment", "from": coords(a, dim), "to": coords(c, dim)}),
        ConvexBody::Polygon(vs) => {
            json!({"kind": "polygon", "vertices": vs.iter().map(|p| coords(p, dim)).collect::<Vec<_>>()})
        }
    }
}

fn parse_terms(v: &Value, dim: u8) -> Result<Representation<Rational>, SpecError> {
    let Some(items) = v.as_array() else {
        return fail("$.terms", "expected a list");
    };
    let mut terms = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let at = format!("$.terms[{i}]");
        let Some(obj) = item.as_object() else {
            return fail(&at, "expected {\"weight\", \"body\"}");
        };
        let weight = parse_rational(field(obj, "weight", &at)?, &format!("{at}.weight"))?;
        let body = parse_body(field(obj, "body", &at)?, dim, &format!("{at}.body"))?;
        terms.push(Term { weight, body });
    }
    Representation::new(dim, terms).or_else(|e| fail("$.terms", e.to_string()))
}

fn parse_table(v: &Value, at: &str) -> Result<StepFunction<Rational>, SpecError> {
    match v {
        Value::String(_) => Ok(StepFunction::constant(parse_rational(v, at)?)),
        Value::Array(rows) => {
            let mut knots = Vec::with_capacity(rows.len());
            for (i, row) in rows.iter().enumerate() {
                let at = format!("{at}[{i}]");
                let cells = match row.as_array() {
                    Some(c) if c.len() == 4 => c,
                    _ => return fail(&at, "expected [x, left, value, right]"),
                };
                let q = |j: usize| parse_rational(&cells[j], &format!("{at}[{j}]"));
                knots.push(Knot {
                    x: q(0)?,
                    left: q(1)?,
                    value: q(2)?,
                    right: q(3)?,
                });
            }
            StepFunction::from_knots(knots).or_else(|e| fail(at, e.to_string()))
        }
        _ => fail(at, "expected a rational string or a list of rows"),
    }
}

fn parse_fg(v: &Value) -> Result<Valuation1D<Rational>, SpecError> {
    let Some(obj) = v.as_object() else {
        return fail("$.fg", "expected {\"f\", \"g\"}");
    };
    let f = parse_table(field(obj, "f", "$.fg")?, "$.fg.f")?;
    let g = parse_table(field(obj, "g", "$.fg")?, "$.fg.g")?;
    Ok(Valuation1D::normalizing(f, g))
}

fn table_to_json(s: &StepFunction<Rational>) -> Value {
    if s.knots().is_empty() {
        return json!(s.left_tail().to_string());
    }
    s.knots()
        .iter()
        .map(|k| {
            json!([
                k.x.to_string(),
                k.left.to_string(),
                k.value.to_string(),
                k.right.to_string()
            ])
        })
        .collect()
}
