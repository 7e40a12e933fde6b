//! JSON rendering of verdicts and witnesses. Every number is a rational string.

use intval::geom::{Direction, HalfPlane, Point};
use intval::valuation::{Verdict, Witness};
use intval::Rational;
use serde_json::{json, Value};

use crate::spec::body_to_json;

pub fn q(v: &Rational) -> Value {
    json!(v.to_string())
}

pub fn point(p: &Point<Rational>) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

pub fn direction(d: &Direction<Rational>) -> Value {
    point(&d.vector())
}

fn halfplane(h: &HalfPlane<Rational>) -> Value {
    json!({"normal": direction(&h.normal), "offset": q(&h.offset)})
}

pub fn witness(w: &Witness<Rational>) -> Value {
    match w {
        Witness::Singleton { point: p, left, right } => {
            json!({"kind": "singleton", "point": point(p), "left": q(left), "right": q(right)})
        }
        Witness::Split {
            body,
            halfplane: h,
            whole,
            lower,
            upper,
            boundary,
        } => json!({
            "kind": "split",
            "body": body_to_json(body, 2),
            "halfplane": halfplane(h),
            "whole": q(whole),
            "lower": q(lower),
            "upper": q(upper),
            "boundary": q(boundary),
        }),
        Witness::Shrink {
            point: p,
            values,
            singleton,
        } => json!({
            "kind": "shrink",
            "point": point(p),
            "values": values.iter().map(q).collect::<Vec<_>>(),
            "singleton": q(singleton),
        }),
        Witness::Cone {
            point: p,
            direction: d,
            lhs,
            rhs,
        } => json!({
            "kind": "cone",
            "point": point(p),
            "direction": d.as_ref().map_or(Value::Null, direction),
            "lhs": q(lhs),
            "rhs": q(rhs),
        }),
        Witness::Nested {
            inner,
            outer,
            inner_value,
            outer_value,
        } => json!({
            "kind": "nested",
            "inner": body_to_json(inner, 2),
            "outer": body_to_json(outer, 2),
            "inner_value": q(inner_value),
            "outer_value": q(outer_value),
        }),
        Witness::Sweep {
            t_before,
            t_after,
            before,
            after,
        } => json!({
            "kind": "sweep",
            "t_before": t_before.as_ref().map_or(Value::Null, q),
            "t_after": q(t_after),
            "before": q(before),
            "after": q(after),
        }),
        Witness::LowValue { point: p, value } => json!({"kind": "low_value", "point": point(p), "value": q(value)}),
        Witness::Visible { a, b } => json!({"kind": "visible", "a": point(a), "b": point(b)}),
        Witness::Bound { n, hull_value } => json!({"kind": "bound", "n": n, "hull_value": q(hull_value)}),
        Witness::Disagree { body, left, right } => {
            json!({"kind": "disagree", "body": body_to_json(body, 2), "left": q(left), "right": q(right)})
        }
    }
}

pub fn verdict(v: &Verdict<Rational>) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.as_ref().map_or(Value::Null, witness),
    })
}
