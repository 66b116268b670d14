//! The JSON fan/divisor input schema.
//!
//! ```json
//! {
//!   "rank": 2,
//!   "rays": [[1, 1], [-1, 1], [0, -1]],
//!   "max_cones": [[0, 1], [1, 2], [0, 2]],
//!   "divisors": { "D1": [1, 0, 0], "H": ["1/2", 0, "-3/4"] },
//!   "options": { "d": "D1", "dprime": "K" }
//! }
//! ```
//!
//! Divisor coefficients follow ray order. `K` always names the canonical
//! divisor `-Σ D_i` and `0` the zero divisor; neither may be redefined.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use toric_core::divisor::canonical_divisor;
use toric_core::harness::Instance;
use toric_core::scalar::{parse_rat, rat_to_string};
use toric_core::{Ambient, Fan, LatticeVector, Rational, TDivisor};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
}

fn field(field: impl Into<String>, msg: impl Into<String>) -> InputError {
    InputError::Field { field: field.into(), msg: msg.into() }
}

/// A coefficient as written: a bare integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatLiteral {
    Int(i64),
    Str(String),
}

impl RatLiteral {
    pub fn parse(&self) -> Option<Rational> {
        match self {
            RatLiteral::Int(k) => Some(Rational::from_integer(BigInt::from(*k))),
            RatLiteral::Str(s) => parse_rat(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        match (q.is_integer(), i64::try_from(q.numer())) {
            (true, Ok(k)) => RatLiteral::Int(k),
            _ => RatLiteral::Str(rat_to_string(q)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default)]
    pub divisors: BTreeMap<String, Vec<RatLiteral>>,
    #[serde(default)]
    pub options: BTreeMap<String, Value>,
}

const RESERVED: [&str; 2] = ["K", "0"];

impl InputDocument {
    pub fn read(path: &Path) -> Result<Self, InputError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| InputError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, InputError> {
        let doc: Self = serde_json::from_str(text).map_err(|e| InputError::Syntax {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    fn validate(&self) -> Result<(), InputError> {
        if self.rank == 0 {
            return Err(field("rank", "must be positive"));
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != self.rank {
                return Err(field(format!("rays[{i}]"), format!("has {} entries, rank is {}", r.len(), self.rank)));
            }
            if r.iter().all(|&x| x == 0) {
                return Err(field(format!("rays[{i}]"), "zero vector"));
            }
        }
        for (c, cone) in self.max_cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(field(format!("max_cones[{c}]"), "empty cone"));
            }
            for (k, &i) in cone.iter().enumerate() {
                if i >= self.rays.len() {
                    return Err(field(
                        format!("max_cones[{c}][{k}]"),
                        format!("ray index {i} out of range (there are {} rays)", self.rays.len()),
                    ));
                }
            }
        }
        for (name, coeffs) in &self.divisors {
            if RESERVED.contains(&name.as_str()) {
                return Err(field(format!("divisors.{name}"), "reserved name"));
            }
            if coeffs.len() != self.rays.len() {
                return Err(field(
                    format!("divisors.{name}"),
                    format!("has {} coefficients, there are {} rays", coeffs.len(), self.rays.len()),
                ));
            }
            for (k, c) in coeffs.iter().enumerate() {
                if c.parse().is_none() {
                    return Err(field(format!("divisors.{name}[{k}]"), format!("not a rational: {c:?}")));
                }
            }
        }
        for key in ["d", "dprime", "label"] {
            if let Some(v) = self.options.get(key) {
                if !v.is_string() {
                    return Err(field(format!("options.{key}"), "expected a string"));
                }
            }
        }
        Ok(())
    }

    pub fn option_str(&self, key: &str) -> Option<&str> {
        self.options.get(key).and_then(Value::as_str)
    }

    pub fn fan(&self) -> Result<Fan, InputError> {
        let rays = self.rays.iter().map(|r| LatticeVector::from_i64s(r, Ambient::N)).collect();
        Fan::build(&self.max_cones, rays, self.rank).map_err(|e| field("max_cones", e.to_string()))
    }

    /// Resolves a divisor name against the document.
    pub fn divisor(&self, fan: &Fan, name: &str) -> Result<TDivisor, InputError> {
        match name {
            "K" => Ok(canonical_divisor(fan)),
            "0" => Ok(TDivisor::zero(fan.rays().len())),
            _ => {
                let coeffs = self.divisors.get(name).ok_or_else(|| {
                    let known: Vec<&str> = self.divisors.keys().map(String::as_str).chain(RESERVED).collect();
                    field("divisors", format!("no divisor named {name:?} (known: {})", known.join(", ")))
                })?;
                Ok(TDivisor::new(coeffs.iter().map(|c| c.parse().expect("validated")).collect()))
            }
        }
    }

    /// Builds an instance; names default to `options.d`/`options.dprime`, then
    /// `D` and `K`.
    pub fn instance(&self, d: Option<&str>, dprime: Option<&str>) -> Result<(Instance<BigInt>, String, String), InputError> {
        let fan = self.fan()?;
        let d_name = d.or(self.option_str("d")).unwrap_or("D").to_string();
        let dp_name = dprime.or(self.option_str("dprime")).unwrap_or("K").to_string();
        let dd = self.divisor(&fan, &d_name)?;
        let dp = self.divisor(&fan, &dp_name)?;
        let label = self.option_str("label").map(str::to_string).unwrap_or_else(|| format!("D={d_name}, D'={dp_name}"));
        let inst = Instance::new(fan, dd, dp, label).map_err(|e| field("divisors", e.to_string()))?;
        Ok((inst, d_name, dp_name))
    }

    /// The document for an instance: the prime divisors `D1, D2, ...`, `D`
    /// and `Dprime`.
    pub fn from_instance(inst: &Instance<BigInt>) -> Result<Self, InputError> {
        let rays = inst
            .fan
            .rays()
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.coords()
                    .iter()
                    .map(|x| i64::try_from(x).map_err(|_| field(format!("rays[{i}]"), "coordinate exceeds 64 bits")))
                    .collect::<Result<Vec<i64>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let max_cones = inst.fan.cones().iter().map(|c| c.ray_indices.clone()).collect();
        let lits = |d: &TDivisor| d.coeffs().iter().map(RatLiteral::from_rational).collect::<Vec<_>>();
        let mut divisors = BTreeMap::new();
        let len = rays.len();
        for i in 0..len {
            divisors.insert(format!("D{}", i + 1), lits(&TDivisor::prime(len, i)));
        }
        divisors.insert("D".to_string(), lits(&inst.d));
        divisors.insert("Dprime".to_string(), lits(&inst.dprime));
        let mut options = BTreeMap::new();
        options.insert("d".to_string(), Value::from("D"));
        options.insert("dprime".to_string(), Value::from("Dprime"));
        options.insert("label".to_string(), Value::from(inst.label.clone()));
        Ok(Self { rank: inst.rank(), rays, max_cones, divisors, options })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const W112: &str = r#"{
  "rank": 2,
  "rays": [[1, 1], [-1, 1], [0, -1]],
  "max_cones": [[0, 1], [1, 2], [0, 2]],
  "divisors": { "D1": [1, 0, 0], "H": ["1/2", 0, "-3/4"] }
}"#;

    #[test]
    fn parses_and_resolves() {
        let doc = InputDocument::parse(W112).unwrap();
        let fan = doc.fan().unwrap();
        assert_eq!(doc.divisor(&fan, "K").unwrap(), TDivisor::from_ints(&[-1, -1, -1]));
        let h = doc.divisor(&fan, "H").unwrap();
        assert_eq!(h.coeffs()[2], Rational::new(BigInt::from(-3), BigInt::from(4)));
        let (inst, d, dp) = doc.instance(Some("D1"), None).unwrap();
        assert_eq!((d.as_str(), dp.as_str()), ("D1", "K"));
        assert_eq!(inst.d, TDivisor::from_ints(&[1, 0, 0]));
    }

    #[test]
    fn errors_carry_context() {
        let err = InputDocument::parse("{\n  \"rank\": 2,\n  \"rays\": [[1, 0],\n}").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 4, .. }), "{err}");
        let bad = W112.replace("[0, 2]]", "[0, 3]]");
        assert_eq!(InputDocument::parse(&bad).unwrap_err().to_string(), "max_cones[2][1]: ray index 3 out of range (there are 3 rays)");
        let bad = W112.replace("\"1/2\"", "\"1/0\"");
        assert!(InputDocument::parse(&bad).unwrap_err().to_string().starts_with("divisors.H[0]"));
        let bad = W112.replace("\"H\"", "\"K\"");
        assert!(InputDocument::parse(&bad).unwrap_err().to_string().starts_with("divisors.K"));
        let doc = InputDocument::parse(W112).unwrap();
        assert!(doc.instance(Some("nope"), None).is_err());
    }

    #[test]
    fn not_a_fan_is_reported() {
        let bad = W112.replace("[[0, 1], [1, 2], [0, 2]]", "[[0, 1], [1, 2]]");
        let doc = InputDocument::parse(&bad).unwrap();
        assert!(matches!(doc.fan(), Err(InputError::Field { .. })));
    }

    #[test]
    fn round_trip() {
        let doc = InputDocument::parse(W112).unwrap();
        assert_eq!(InputDocument::parse(&doc.to_json()).unwrap(), doc);
    }
}
