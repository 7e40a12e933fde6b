//! The subcommands. Each returns a JSON report and whether every requested
//! check held; input problems come back as `InputError`.

use std::fs;
use std::io::Read;

use intval::admissibility::{certify_monotone, counterexample_at, falsify_monotone, NestedPair};
use intval::geom::ConvexBody;
use intval::line::{
    classify, closed_form, decompose, eval1, fg_from_oracle, format_trace, probe_grid, IntervalTerm, LineError,
    Valuation1D,
};
use intval::product::product_cg;
use intval::structure::{canonicalize, convex_components, support, StructureError};
use intval::valuation::{equal, evaluate, Representation, ValuationError, Verdict, Witness};
use intval::Rational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::report::{self, q};
use crate::spec::{body_to_json, parse_body, Model, Spec, SpecError};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Spec { path: String, source: SpecError },
    #[error("{0}")]
    Usage(String),
}

impl From<ValuationError> for InputError {
    fn from(e: ValuationError) -> Self {
        InputError::Usage(e.to_string())
    }
}

pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

fn read(path: &str) -> Result<String, InputError> {
    let io = |source| InputError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

pub fn load(path: &str) -> Result<Spec, InputError> {
    Spec::parse(&read(path)?).map_err(|source| InputError::Spec {
        path: path.to_string(),
        source,
    })
}

fn write_spec(path: &str, spec: &Spec) -> Result<(), InputError> {
    let text = serde_json::to_string_pretty(&spec.to_json()).expect("json");
    fs::write(path, text + "\n").map_err(|source| InputError::Io {
        path: path.to_string(),
        source,
    })
}

fn planar(spec: Spec, what: &str) -> Result<Representation<Rational>, InputError> {
    match spec.model {
        Model::Terms(rep) if rep.dim() == 2 => Ok(rep),
        _ => Err(InputError::Usage(format!("{what} needs a planar spec with terms"))),
    }
}

fn line_model(spec: &Spec) -> Result<Valuation1D<Rational>, InputError> {
    match &spec.model {
        Model::Line(v) => Ok(v.clone()),
        Model::Terms(rep) if rep.dim() == 1 => Ok(fg_from_oracle(rep)),
        _ => Err(InputError::Usage("expected a spec of dim 1".into())),
    }
}

fn value_on_line(v: &Valuation1D<Rational>, k: &ConvexBody<Rational>) -> Result<Rational, InputError> {
    let (a, b) = match k {
        ConvexBody::Empty => return Ok(Rational::from_integer(0.into())),
        ConvexBody::Point(p) => (p.x.clone(), p.x.clone()),
        ConvexBody::Segment(p, r) => (p.x.clone().min(r.x.clone()), p.x.clone().max(r.x.clone())),
        _ => return Err(InputError::Usage("only points and segments live on the line".into())),
    };
    eval1(v, &a, &b).map_err(|e| InputError::Usage(e.to_string()))
}

pub fn eval(spec_path: &str, bodies_path: &str) -> Result<Outcome, InputError> {
    let spec = load(spec_path)?;
    let dim = spec.dim();
    let doc: Value = serde_json::from_str(&read(bodies_path)?).map_err(|e| InputError::Spec {
        path: bodies_path.to_string(),
        source: SpecError {
            at: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        },
    })?;
    let Some(items) = doc.as_array() else {
        return Err(InputError::Usage(format!("{bodies_path}: expected a list of bodies")));
    };
    let mut values = Vec::with_capacity(items.len());
    for (i, item) in items.iter().enumerate() {
        let k = parse_body(item, dim, &format!("$[{i}]")).map_err(|source| InputError::Spec {
            path: bodies_path.to_string(),
            source,
        })?;
        let v = match &spec.model {
            Model::Terms(rep) => evaluate(rep, &k),
            Model::Line(line) => value_on_line(line, &k)?,
        };
        values.push(json!({"body": body_to_json(&k, dim), "value": q(&v)}));
    }
    Ok(Outcome {
        report: json!({
            "command": {"name": "eval", "spec": spec_path, "bodies": bodies_path},
            "values": values,
        }),
        passed: true,
    })
}

#[derive(Debug, Clone, Default)]
pub struct CheckOptions {
    pub admissible: bool,
    pub monotone: bool,
    pub falsify: Option<u32>,
    pub seed: u64,
}

fn nested_json(p: &NestedPair<Rational>) -> Value {
    json!({
        "inner": body_to_json(&p.inner, 2),
        "outer": body_to_json(&p.outer, 2),
        "inner_value": q(&p.inner_value),
        "outer_value": q(&p.outer_value),
    })
}

pub fn check(spec_path: &str, opts: &CheckOptions) -> Result<Outcome, InputError> {
    let spec = load(spec_path)?;
    let mut opts = opts.clone();
    if !opts.admissible && !opts.monotone && opts.falsify.is_none() {
        opts.monotone = true;
    }
    let command = json!({
        "name": "check",
        "spec": spec_path,
        "admissible": opts.admissible,
        "monotone": opts.monotone,
        "falsify": opts.falsify,
        "seed": opts.seed,
    });
    if spec.dim() == 1 {
        if opts.admissible || opts.falsify.is_some() {
            return Err(InputError::Usage(
                "--admissible and --falsify need a planar spec".into(),
            ));
        }
        let flags = classify(&line_model(&spec)?);
        return Ok(Outcome {
            report: json!({
                "command": command,
                "monotone": {
                    "holds": flags.monotone,
                    "integer_valued": flags.integer_valued,
                    "sigma_continuous": flags.sigma_continuous,
                },
            }),
            passed: flags.monotone,
        });
    }
    let rep = planar(spec, "check")?;
    let (verdict, adm) = certify_monotone(&rep)?;
    let mut out = serde_json::Map::new();
    out.insert("command".into(), command);
    let mut passed = true;
    if opts.admissible {
        let mut v = report::verdict(&verdict);
        v["checked_points"] = json!(adm.checked_points.len());
        v["checked_directions"] = json!(adm.checked_directions.iter().sum::<usize>());
        out.insert("admissible".into(), v);
        passed &= verdict.holds;
    }
    if opts.monotone {
        let pair = adm
            .failure
            .as_ref()
            .and_then(|f| counterexample_at(&rep, f))
            .filter(|p| p.verify(&rep));
        let v = match &pair {
            None if verdict.holds => report::verdict(&Verdict::pass()),
            None => report::verdict(&verdict),
            Some(p) => report::verdict(&Verdict::fail(Witness::Nested {
                inner: p.inner.clone(),
                outer: p.outer.clone(),
                inner_value: p.inner_value.clone(),
                outer_value: p.outer_value.clone(),
            })),
        };
        out.insert("monotone".into(), v);
        passed &= verdict.holds;
    }
    if let Some(budget) = opts.falsify {
        let found = falsify_monotone(&rep, budget, opts.seed)?;
        out.insert(
            "falsify".into(),
            json!({
                "budget": budget,
                "found": found.is_some(),
                "pair": found.as_ref().map_or(Value::Null, nested_json),
            }),
        );
        passed &= found.is_none();
    }
    Ok(Outcome {
        report: Value::Object(out),
        passed,
    })
}

fn same_line_valuation(a: &Valuation1D<Rational>, b: &Valuation1D<Rational>) -> Option<Rational> {
    let grid = probe_grid(&[a.f(), a.g(), b.f(), b.g()]);
    grid.iter()
        .find(|x| a.point_value(x) != b.point_value(x))
        .cloned()
        .or_else(|| {
            let (fa, fb) = (a.f().sub(b.f()), a.g().sub(b.g()));
            let zero = Rational::from_integer(0.into());
            grid.iter()
                .find(|x| {
                    [
                        fa.left_limit(x),
                        fa.eval(x),
                        fa.right_limit(x),
                        fb.left_limit(x),
                        fb.eval(x),
                        fb.right_limit(x),
                    ]
                    .iter()
                    .any(|d| *d != zero)
                })
                .cloned()
        })
}

pub fn equal_cmd(a_path: &str, b_path: &str) -> Result<Outcome, InputError> {
    let (a, b) = (load(a_path)?, load(b_path)?);
    let command = json!({"name": "equal", "a": a_path, "b": b_path});
    if a.dim() != b.dim() {
        return Err(InputError::Usage(format!(
            "dimensions differ: {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let verdict = match (&a.model, &b.model) {
        (Model::Terms(x), Model::Terms(y)) => report::verdict(&equal(x, y, None)?),
        _ => {
            let (x, y) = (line_model(&a)?, line_model(&b)?);
            match same_line_valuation(&x, &y) {
                None => json!({"holds": true, "witness": null}),
                Some(t) => json!({
                    "holds": false,
                    "witness": {"kind": "line", "at": q(&t), "left": q(&x.point_value(&t)), "right": q(&y.point_value(&t))},
                }),
            }
        }
    };
    let passed = verdict["holds"] == json!(true);
    Ok(Outcome {
        report: json!({"command": command, "equal": verdict}),
        passed,
    })
}

fn term_json(t: &IntervalTerm<Rational>) -> Value {
    let end = |e: &Option<Rational>, inf: &str| e.as_ref().map_or(json!(inf), q);
    match t {
        IntervalTerm::Real {
            lo,
            lo_closed,
            hi,
            hi_closed,
        } => json!({
            "interval": t.to_string(),
            "lo": end(lo, "-inf"),
            "lo_closed": lo_closed,
            "hi": end(hi, "inf"),
            "hi_closed": hi_closed,
        }),
        IntervalTerm::VirtualR(r) => json!({"interval": t.to_string(), "point": q(r), "counts_when": "a < point <= b"}),
        IntervalTerm::VirtualS(s) => json!({"interval": t.to_string(), "point": q(s), "counts_when": "a <= point < b"}),
    }
}

pub fn decompose1d(spec_path: &str, closed: bool) -> Result<Outcome, InputError> {
    let spec = load(spec_path)?;
    let v = line_model(&spec)?;
    let command = json!({"name": "decompose1d", "spec": spec_path, "closed": closed});
    let flags = classify(&v);
    let flags_json = json!({
        "integer_valued": flags.integer_valued,
        "monotone": flags.monotone,
        "sigma_continuous": flags.sigma_continuous,
    });
    let failed = |name: &str, message: String| Outcome {
        report: json!({"command": command, "flags": flags_json, "failed": name, "error": message}),
        passed: false,
    };
    let d = match decompose(&v) {
        Ok(d) => d,
        Err(e @ LineError::NotIntegerMonotone { integer_valued, .. }) => {
            let name = if integer_valued { "monotone" } else { "integer_valued" };
            return Ok(failed(name, e.to_string()));
        }
        Err(e) => return Err(InputError::Usage(e.to_string())),
    };
    let mut out = serde_json::Map::new();
    out.insert("command".into(), command.clone());
    out.insert("flags".into(), flags_json.clone());
    out.insert("m".into(), q(&d.m));
    out.insert("c".into(), q(&d.c));
    out.insert("trace".into(), json!(format_trace(&d.trace)));
    out.insert("negative_trace".into(), json!(format_trace(&d.negative_trace)));
    out.insert("terms".into(), d.terms.iter().map(term_json).collect());
    let summary = match d.terms.len() {
        0 => format!("m={}, no terms", d.m),
        1 => format!("m={}, 1 term", d.m),
        n => format!("m={}, {n} terms", d.m),
    };
    out.insert("summary".into(), json!(summary));
    if closed {
        match closed_form(&v) {
            Ok(terms) => {
                out.insert("closed_terms".into(), terms.iter().map(term_json).collect());
            }
            Err(e) => return Ok(failed("sigma_continuous", e.to_string())),
        }
    }
    Ok(Outcome {
        report: Value::Object(out),
        passed: true,
    })
}

pub fn product(a_path: &str, b_path: &str, out_path: &str) -> Result<Outcome, InputError> {
    let a = planar(load(a_path)?, "product")?;
    let b = planar(load(b_path)?, "product")?;
    let p = product_cg(&a, &b)?;
    write_spec(out_path, &Spec::terms(p.clone()))?;
    Ok(Outcome {
        report: json!({
            "command": {"name": "product", "a": a_path, "b": b_path, "out": out_path},
            "terms": p.len(),
        }),
        passed: true,
    })
}

fn structure_error(e: StructureError) -> Result<Outcome, InputError> {
    Err(InputError::Usage(e.to_string()))
}

pub fn support_cmd(spec_path: &str, window: Option<&str>, canonical_out: Option<&str>) -> Result<Outcome, InputError> {
    let rep = planar(load(spec_path)?, "support")?;
    let window = match window {
        None => None,
        Some(w) => {
            let text = if w.trim_start().starts_with('{') {
                w.to_string()
            } else {
                read(w)?
            };
            let doc: Value = serde_json::from_str(&text).map_err(|e| InputError::Usage(format!("--window: {e}")))?;
            let body = parse_body(&doc, 2, "--window").map_err(|source| InputError::Spec {
                path: "--window".into(),
                source,
            })?;
            Some(body)
        }
    };
    let region = match support(&rep, window.as_ref()) {
        Ok(r) => r,
        Err(e) => return structure_error(e),
    };
    let cover = convex_components(&region);
    let cells: Vec<Value> = region
        .support_cells()
        .map(|i| {
            let c = &region.arrangement.cells[i];
            json!({"closure": body_to_json(&c.closure, 2), "sample": report::point(&c.sample), "value": q(&region.values[i])})
        })
        .collect();
    let mut out = serde_json::Map::new();
    out.insert(
        "command".into(),
        json!({"name": "support", "spec": spec_path, "window": window.as_ref().map(|w| body_to_json(w, 2)), "canonicalize": canonical_out}),
    );
    out.insert("max".into(), q(&region.max_value()));
    out.insert("min".into(), q(&region.min_value()));
    out.insert("outer_value".into(), q(&region.outer_value));
    out.insert("closed".into(), json!(region.closed));
    out.insert("warnings".into(), json!(region.warnings));
    out.insert("cells".into(), Value::Array(cells));
    out.insert(
        "components".into(),
        cover.components.iter().map(|b| body_to_json(b, 2)).collect(),
    );
    out.insert("complete".into(), json!(cover.complete));
    out.insert("leftover".into(), json!(cover.leftover.len()));
    let mut passed = true;
    if let Some(path) = canonical_out {
        match canonicalize(&rep, window.as_ref()) {
            Ok(c) => {
                write_spec(path, &Spec::terms(c.clone()))?;
                out.insert("canonical".into(), json!({"out": path, "terms": c.len()}));
            }
            Err(e @ (StructureError::NotMonotone | StructureError::IncompleteCover { .. })) => {
                out.insert("canonical".into(), json!({"out": null, "error": e.to_string()}));
                passed = false;
            }
            Err(e) => return structure_error(e),
        }
    }
    Ok(Outcome {
        report: Value::Object(out),
        passed,
    })
}
