//! Report values and their two renderings.
//!
//! Reports are `serde_json::Value`s whose maps are key-sorted, so the JSON
//! form is byte-stable. Rationals are always strings (`"3"`, `"-1/2"`),
//! lattice coordinates are integers.

use num_bigint::BigInt;
use serde_json::{Map, Value};
use toric_core::harness::{CheckReport, ConeData, FuzzSummary, Hypothesis, Outcome, Witness};
use toric_core::scalar::rat_to_string;
use toric_core::{LatticeVector, RatVector, Rational};

pub fn q(r: &Rational) -> Value {
    Value::String(rat_to_string(r))
}

pub fn int(z: &BigInt) -> Value {
    match i64::try_from(z) {
        Ok(k) => Value::from(k),
        Err(_) => Value::String(z.to_string()),
    }
}

pub fn lat(v: &LatticeVector) -> Value {
    Value::Array(v.coords().iter().map(int).collect())
}

pub fn rvec(v: &RatVector) -> Value {
    Value::Array(v.coords().iter().map(q).collect())
}

pub fn lats<'a>(vs: impl IntoIterator<Item = &'a LatticeVector>) -> Value {
    Value::Array(vs.into_iter().map(lat).collect())
}

/// An object from `(key, value)` pairs, dropping absent values.
pub fn obj<'a>(pairs: impl IntoIterator<Item = (&'a str, Option<Value>)>) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        if let Some(v) = v {
            m.insert(k.to_string(), v);
        }
    }
    Value::Object(m)
}

pub fn hypothesis(h: &Hypothesis) -> Value {
    obj([
        ("name", Some(Value::from(h.name))),
        ("holds", Some(Value::from(h.holds))),
        ("detail", (!h.detail.is_empty()).then(|| Value::from(h.detail.clone()))),
    ])
}

pub fn witness(w: &Witness<BigInt>) -> Value {
    match w {
        Witness::MissingGenerator { cone, element } => obj([
            ("kind", Some(Value::from("missing_generator"))),
            ("cone", Some(Value::from(*cone))),
            ("element", Some(lat(element))),
        ]),
        Witness::NegativeWall { sigma, tau, value } => obj([
            ("kind", Some(Value::from("negative_wall"))),
            ("sigma", Some(Value::from(*sigma))),
            ("tau", Some(Value::from(*tau))),
            ("value", Some(q(value))),
        ]),
        Witness::PointOutside { cone, point } => obj([
            ("kind", Some(Value::from("point_outside"))),
            ("cone", Some(Value::from(*cone))),
            ("point", Some(lat(point))),
        ]),
        Witness::Inequality { cone, lhs, rhs } => obj([
            ("kind", Some(Value::from("inequality"))),
            ("cone", Some(Value::from(*cone))),
            ("lhs", Some(q(lhs))),
            ("rhs", Some(q(rhs))),
        ]),
        Witness::InteriorPoint { cone, point, value } => obj([
            ("kind", Some(Value::from("interior_point"))),
            ("cone", Some(Value::from(*cone))),
            ("point", Some(lat(point))),
            ("lambda_max", Some(q(value))),
        ]),
    }
}

pub fn cone_data(c: &ConeData<BigInt>) -> Value {
    obj([
        ("index", Some(Value::from(c.cone))),
        ("t", c.t.as_ref().map(q)),
        ("m", c.m.as_ref().map(q)),
        ("u_prime", c.u_prime.as_ref().map(rvec)),
        ("lambda_min", c.lambda_min.as_ref().map(q)),
        ("lambda_max", c.lambda_max.as_ref().map(q)),
        ("bound", c.bound.as_ref().map(q)),
        ("applicable", c.applicable.map(Value::from)),
        ("holds", c.holds.map(Value::from)),
        ("note", c.note.clone().map(Value::from)),
    ])
}

/// One line describing the outcome, with the reasons for inapplicability.
pub fn summary(r: &CheckReport<BigInt>) -> String {
    match r.outcome {
        Outcome::Verified => "verified".to_string(),
        Outcome::Falsified => "FALSIFIED: hypotheses hold, conclusion fails".to_string(),
        Outcome::NotApplicable => {
            let mut reasons: Vec<String> = r
                .hypotheses
                .iter()
                .filter(|h| !h.holds)
                .map(|h| if h.detail.is_empty() { format!("{} fails", h.name) } else { h.detail.clone() })
                .collect();
            if reasons.is_empty() {
                for c in &r.cones {
                    if c.applicable == Some(false) {
                        let note = c.note.clone().unwrap_or_else(|| "local hypotheses fail".into());
                        for part in note.split("; ") {
                            if !reasons.iter().any(|x| x == part) {
                                reasons.push(part.to_string());
                            }
                        }
                    }
                }
            }
            if reasons.is_empty() {
                reasons.push("conclusion not evaluable".into());
            }
            format!("not applicable ({})", reasons.join("; "))
        }
    }
}

pub fn check_report(r: &CheckReport<BigInt>) -> Value {
    obj([
        ("statement", Some(Value::from(r.statement.name()))),
        ("instance", Some(Value::from(r.label.clone()))),
        ("hypotheses", Some(Value::Array(r.hypotheses.iter().map(hypothesis).collect()))),
        ("conclusion", Some(r.conclusion.map(Value::from).unwrap_or(Value::Null))),
        ("outcome", Some(Value::from(r.outcome.name()))),
        ("summary", Some(Value::from(summary(r)))),
        ("witnesses", Some(Value::Array(r.witnesses.iter().map(witness).collect()))),
        ("cones", Some(Value::Array(r.cones.iter().map(cone_data).collect()))),
        ("very_ample", r.very_ample.map(Value::from)),
    ])
}

pub fn fuzz_summary(s: &FuzzSummary, dim: usize, seed: u64) -> Value {
    let records = s
        .records
        .iter()
        .map(|rec| {
            let (outcome, error) = match &rec.outcome {
                Ok(o) => (o.name().to_string(), None),
                Err(e) => ("error".to_string(), Some(Value::from(e.to_string()))),
            };
            obj([
                ("index", Some(Value::from(rec.index))),
                ("seed", Some(Value::from(rec.seed))),
                ("outcome", Some(Value::from(outcome))),
                ("error", error),
            ])
        })
        .collect();
    obj([
        ("statement", Some(Value::from(s.statement.name()))),
        ("dim", Some(Value::from(dim))),
        ("seed", Some(Value::from(seed))),
        ("count", Some(Value::from(s.records.len()))),
        ("verified", Some(Value::from(s.verified))),
        ("not_applicable", Some(Value::from(s.not_applicable))),
        ("falsified", Some(Value::from(s.falsified))),
        ("errors", Some(Value::from(s.errors))),
        ("records", Some(Value::Array(records))),
    ])
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Indented `key  value` lines with keys padded per object. Arrays without
/// objects stay on one line.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    render(v, 0, &mut out);
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(is_flat),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, val) in m {
                if is_flat(val) {
                    out.push_str(&format!("{pad}{k:<width$}  {}\n", inline(val)));
                } else {
                    out.push_str(&format!("{pad}{k}\n"));
                    render(val, indent + 2, out);
                }
            }
        }
        Value::Array(a) if !is_flat(v) => {
            for (i, item) in a.iter().enumerate() {
                if is_flat(item) {
                    out.push_str(&format!("{pad}[{i}] {}\n", inline(item)));
                } else {
                    out.push_str(&format!("{pad}[{i}]\n"));
                    render(item, indent + 2, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
