//! Command drivers. Each returns a report value; the exit status is part of it.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::Value;
use toric_core::divisor::{local_data, polytope, LocalData};
use toric_core::harness::{
    builtin_from_spec, fuzz, is_projective_space, run_check, CheckOptions, FuzzOptions, Instance, Outcome,
    RandomConfig, Statement, BUILTIN_NAMES,
};
use toric_core::intersection::{cone_minima, is_nef, wall_intersection};
use toric_core::lambda::{lambda, LambdaMode};
use toric_core::semigroup::{generates, hilbert_basis, lattice_points};
use toric_core::{Cone, Error, Fan, RatVector, Rational, TDivisor};

use crate::input::{InputDocument, InputError, RatLiteral};
use crate::report::{self, int, lat, lats, obj, q, rvec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CmdError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Core(Error::Invariant(_)) => EXIT_FAIL,
            _ => EXIT_INPUT,
        }
    }
}

pub type CmdResult = Result<Value, CmdError>;

/// Where an instance comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Builtin(String),
}

/// Loads the document; builtins are converted so both routes share the
/// same divisor naming.
pub fn load(src: &Source) -> Result<(InputDocument, bool), CmdError> {
    match src {
        Source::File(p) => Ok((InputDocument::read(p)?, false)),
        Source::Builtin(spec) => {
            let inst = builtin_from_spec::<BigInt>(spec)?;
            Ok((InputDocument::from_instance(&inst)?, true))
        }
    }
}

fn with_exit(mut v: Value, code: i32) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("exit_status".into(), Value::from(code));
    }
    v
}

fn instance_echo(inst: &Instance<BigInt>, certified: bool) -> Value {
    let fan = &inst.fan;
    obj([
        ("label", Some(Value::from(inst.label.clone()))),
        ("rank", Some(Value::from(fan.rank()))),
        ("rays", Some(lats(fan.rays()))),
        (
            "max_cones",
            Some(Value::Array(fan.cones().iter().map(|c| Value::from(c.ray_indices.clone())).collect())),
        ),
        ("simplicial", Some(Value::from(fan.is_simplicial()))),
        ("projective_space", Some(Value::from(is_projective_space(fan)))),
        ("projectivity_certified", Some(Value::from(certified))),
    ])
}

fn duals(fan: &Fan) -> Result<Vec<Cone>, CmdError> {
    Ok(fan.cones().iter().map(|c| c.cone.dual()).collect::<Result<Vec<_>, _>>()?)
}

/// Whether the lattice points of every `P^σ_D` generate `σ^∨ ∩ M`; the
/// first failure is returned.
fn generation(
    fan: &Fan,
    d: &TDivisor,
    ld: &LocalData<BigInt>,
    duals: &[Cone],
) -> Result<Option<(usize, toric_core::LatticeVector)>, CmdError> {
    let p = polytope(fan, d)?;
    for (sigma, dual) in duals.iter().enumerate() {
        let pts = lattice_points(&p.translated(ld.u(sigma)))?;
        if let Some(missing) = generates(&pts, dual)?.missing {
            return Ok(Some((sigma, missing)));
        }
    }
    Ok(None)
}

fn verdicts(fan: &Fan, name: &str, d: &TDivisor, duals: &[Cone], very_ample: bool) -> CmdResult {
    let p = polytope(fan, d)?;
    let mut fields = vec![
        ("name", Some(Value::from(name))),
        ("coeffs", Some(Value::Array(d.coeffs().iter().map(q).collect()))),
        ("polytope_vertices", Some(Value::Array(p.vertices().iter().map(rvec).collect()))),
    ];
    match local_data(fan, d)? {
        Err(nq) => {
            fields.push(("q_cartier", Some(Value::from(false))));
            fields.push(("not_q_cartier_cone", Some(Value::from(nq.cone))));
        }
        Ok(ld) => {
            let cartier = ld.all().iter().all(RatVector::is_integral);
            let nef = is_nef(fan, d)?;
            fields.push(("q_cartier", Some(Value::from(true))));
            fields.push(("cartier", Some(Value::from(cartier))));
            fields.push(("nef", Some(Value::from(nef))));
            if cartier {
                fields.push(("basepoint_free", Some(Value::from(nef))));
            }
            if cartier && very_ample {
                let failure = if nef { generation(fan, d, &ld, duals)? } else { None };
                fields.push(("very_ample", Some(Value::from(nef && failure.is_none()))));
                if let Some((cone, missing)) = failure {
                    fields.push((
                        "very_ample_witness",
                        Some(obj([("cone", Some(Value::from(cone))), ("missing", Some(lat(&missing)))])),
                    ));
                }
            }
        }
    }
    Ok(obj(fields))
}

/// Verdicts for `D`, `D'` and `D + D'`, per-cone data and wall values.
pub fn analyze(src: &Source, d: Option<&str>, dprime: Option<&str>, very_ample: bool) -> CmdResult {
    let (doc, certified) = load(src)?;
    let (inst, dn, dpn) = doc.instance(d, dprime)?;
    let fan = &inst.fan;
    let sum = inst.d.add(&inst.dprime);
    let duals = duals(fan)?;
    let named = [
        ("D", dn.clone(), &inst.d),
        ("Dprime", dpn.clone(), &inst.dprime),
        ("D+Dprime", format!("{dn}+{dpn}"), &sum),
    ];
    let mut divisors = serde_json::Map::new();
    let mut lds = Vec::new();
    for (key, name, div) in &named {
        divisors.insert(key.to_string(), verdicts(fan, name, div, &duals, very_ample)?);
        lds.push(local_data(fan, div)?.ok());
    }
    let mut cones = Vec::new();
    for (sigma, mc) in fan.cones().iter().enumerate() {
        let minima = match (&lds[0], &lds[1]) {
            (Some(_), Some(_)) => Some(cone_minima(fan, &inst.d, &inst.dprime, sigma)?),
            _ => None,
        };
        let up = lds[1].as_ref().map(|l| l.u(sigma).clone());
        let (mut lmin, mut lmax, mut inside) = (None, None, None);
        if let Some(up) = &up {
            let dual = &duals[sigma];
            let is_in = dual.contains(up, false)?;
            inside = Some(Value::from(is_in));
            if is_in {
                lmin = Some(q(&lambda(dual, up, LambdaMode::Min)?.value));
                lmax = Some(q(&lambda(dual, up, LambdaMode::Max)?.value));
            }
        }
        cones.push(obj([
            ("index", Some(Value::from(sigma))),
            ("rays", Some(Value::from(mc.ray_indices.clone()))),
            ("regular", Some(Value::from(mc.cone.classify().regular))),
            ("u_sigma", lds[0].as_ref().map(|l| rvec(l.u(sigma)))),
            ("u_prime", up.as_ref().map(rvec)),
            ("u_prime_in_dual", inside),
            ("t", minima.as_ref().map(|m| q(&m.t))),
            ("m", minima.as_ref().map(|m| q(&m.m))),
            ("lambda_min", lmin),
            ("lambda_max", lmax),
        ]));
    }
    let walls = fan
        .walls()
        .iter()
        .map(|w| {
            let val = |i: usize| lds[i].as_ref().map(|l| q(&wall_intersection(fan, l, w)));
            obj([
                ("sigma", Some(Value::from(w.sigma))),
                ("tau", Some(Value::from(w.tau))),
                ("wall_rays", Some(Value::from(w.wall_rays.clone()))),
                ("u", Some(lat(&w.u))),
                ("D", val(0)),
                ("Dprime", val(1)),
                ("D+Dprime", val(2)),
            ])
        })
        .collect();
    let v = obj([
        ("command", Some(Value::from("analyze"))),
        ("instance", Some(instance_echo(&inst, certified))),
        ("divisors", Some(Value::Object(divisors))),
        ("cones", Some(Value::Array(cones))),
        ("walls", Some(Value::Array(walls))),
    ]);
    Ok(with_exit(v, EXIT_OK))
}

#[derive(Clone, Debug, Default)]
pub struct VerifyFlags {
    pub d: Option<String>,
    pub dprime: Option<String>,
    pub sigma: Option<usize>,
    pub r: Option<Rational>,
    pub interior_bound: Option<u32>,
}

impl VerifyFlags {
    fn options(&self) -> CheckOptions<BigInt> {
        let default = CheckOptions::<BigInt>::default();
        CheckOptions {
            sigma: self.sigma,
            r: self.r.clone(),
            interior_bound: self.interior_bound.unwrap_or(default.interior_bound),
        }
    }
}

pub fn parse_statement(s: &str) -> Result<Statement, CmdError> {
    Statement::parse(s).ok_or_else(|| {
        let names: Vec<&str> = Statement::ALL.iter().map(|s| s.name()).collect();
        CmdError::Usage(format!("unknown statement {s:?} (expected one of {})", names.join(", ")))
    })
}

/// Runs one statement on one instance. A falsified statement exits 2.
pub fn verify(st: Statement, src: &Source, flags: &VerifyFlags) -> CmdResult {
    let (doc, certified) = load(src)?;
    let (inst, _, _) = doc.instance(flags.d.as_deref(), flags.dprime.as_deref())?;
    let rep = run_check(st, &inst, &flags.options())?;
    let mut v = report::check_report(&rep);
    if let Value::Object(m) = &mut v {
        m.insert("command".into(), Value::from("verify"));
        m.insert("instance".into(), instance_echo(&inst, certified));
    }
    let code = if rep.outcome == Outcome::Falsified { EXIT_FAIL } else { EXIT_OK };
    Ok(with_exit(v, code))
}

/// Wall-value target of the random pool for a statement: `n` for the bound
/// that excludes ℙⁿ, `n + 1` otherwise.
pub fn fuzz_config(st: Statement, dim: usize) -> RandomConfig {
    let cfg = RandomConfig::for_dim(dim);
    if st == Statement::FujinoPlus {
        cfg.with_target(dim as i64, 1)
    } else {
        cfg
    }
}

/// Runs a statement over `count` random instances. Any falsification or
/// error exits 2.
pub fn verify_fuzz(st: Statement, dim: usize, seed: u64, count: usize, flags: &VerifyFlags) -> CmdResult {
    if !(2..=3).contains(&dim) {
        return Err(CmdError::Usage("--fuzz supports dimension 2 or 3".into()));
    }
    let opts = FuzzOptions { dim, seed, count, config: fuzz_config(st, dim) };
    let s = fuzz::<BigInt>(st, &opts, &flags.options());
    let code = if s.falsified + s.errors > 0 { EXIT_FAIL } else { EXIT_OK };
    let v = obj([
        ("command", Some(Value::from("verify"))),
        ("statement", Some(Value::from(st.name()))),
        ("fuzz", Some(report::fuzz_summary(&s, dim, seed))),
    ]);
    Ok(with_exit(v, code))
}

/// Hilbert basis of `σ^∨`; with a divisor, which basis elements lie in
/// `P^σ_D ∩ M`.
pub fn hilbert(src: &Source, sigma: usize, divisor: Option<&str>) -> CmdResult {
    let (doc, _) = load(src)?;
    let fan = doc.fan()?;
    if sigma >= fan.cones().len() {
        return Err(CmdError::Usage(format!("no maximal cone {sigma}; the fan has {}", fan.cones().len())));
    }
    let dual = fan.cone(sigma).cone.dual()?;
    let hb = hilbert_basis(&dual)?;
    let div = match divisor {
        None => None,
        Some(name) => {
            let d = doc.divisor(&fan, name)?;
            let mut fields = vec![("name", Some(Value::from(name)))];
            match local_data(&fan, &d)? {
                Err(nq) => {
                    fields.push(("q_cartier", Some(Value::from(false))));
                    fields.push(("not_q_cartier_cone", Some(Value::from(nq.cone))));
                }
                Ok(ld) => {
                    let pts = lattice_points(&polytope(&fan, &d)?.translated(ld.u(sigma)))?;
                    let (present, missing): (Vec<_>, Vec<_>) = hb.elements.points().iter().partition(|e| pts.contains(e));
                    fields.push(("q_cartier", Some(Value::from(true))));
                    fields.push(("u_sigma", Some(rvec(ld.u(sigma)))));
                    fields.push(("lattice_points", Some(lats(pts.points()))));
                    fields.push(("present", Some(lats(present))));
                    fields.push(("generates", Some(Value::from(missing.is_empty()))));
                    fields.push(("missing", Some(lats(missing))));
                }
            }
            Some(obj(fields))
        }
    };
    let v = obj([
        ("command", Some(Value::from("hilbert"))),
        ("cone", Some(Value::from(sigma))),
        ("cone_rays", Some(Value::from(fan.cone(sigma).ray_indices.clone()))),
        ("dual_rays", Some(lats(dual.rays()))),
        ("multiplicity", fan.cone(sigma).cone.multiplicity().as_ref().map(int)),
        ("hilbert_basis", Some(lats(hb.elements.points()))),
        ("divisor", div),
    ]);
    Ok(with_exit(v, EXIT_OK))
}

/// Files written by `examples emit` without explicit specs.
pub struct CatalogEntry {
    pub file: &'static str,
    pub spec: &'static str,
    pub extra: &'static [(&'static str, &'static [i64])],
    pub d: &'static str,
    pub dprime: &'static str,
}

pub const CATALOG: [CatalogEntry; 9] = [
    CatalogEntry {
        file: "p2.json",
        spec: "projective_space(2,3)",
        extra: &[("H", &[1, 0, 0]), ("2H", &[2, 0, 0]), ("3H", &[3, 0, 0]), ("4H", &[4, 0, 0])],
        d: "3H",
        dprime: "K",
    },
    CatalogEntry { file: "weighted_112.json", spec: "weighted_112", extra: &[], d: "D1", dprime: "K" },
    CatalogEntry { file: "hirzebruch_1.json", spec: "hirzebruch(1)", extra: &[], d: "D", dprime: "K" },
    CatalogEntry { file: "product_p1.json", spec: "product_p1(2,2)", extra: &[], d: "D", dprime: "K" },
    CatalogEntry { file: "intro_simplex_2.json", spec: "intro_simplex(2,3)", extra: &[], d: "D", dprime: "Dprime" },
    CatalogEntry { file: "intro_simplex_3.json", spec: "intro_simplex(3,4)", extra: &[], d: "D", dprime: "Dprime" },
    CatalogEntry { file: "ew.json", spec: "ew_simplex(1)", extra: &[], d: "D", dprime: "K" },
    CatalogEntry { file: "ew_simplex_t4.json", spec: "ew_simplex(4)", extra: &[], d: "D", dprime: "K" },
    CatalogEntry { file: "quadric_cone.json", spec: "quadric_cone(1)", extra: &[], d: "D", dprime: "K" },
];

pub fn catalog_document(e: &CatalogEntry) -> Result<InputDocument, CmdError> {
    let inst = builtin_from_spec::<BigInt>(e.spec)?;
    let mut doc = InputDocument::from_instance(&inst)?;
    for (name, coeffs) in e.extra {
        doc.divisors.insert(name.to_string(), coeffs.iter().map(|&c| RatLiteral::Int(c)).collect());
    }
    doc.options.insert("d".into(), Value::from(e.d));
    doc.options.insert("dprime".into(), Value::from(e.dprime));
    Ok(doc)
}

pub fn examples_list() -> CmdResult {
    let v = obj([
        ("command", Some(Value::from("examples"))),
        ("builtins", Some(Value::from(BUILTIN_NAMES.to_vec()))),
        (
            "catalog",
            Some(Value::Array(
                CATALOG
                    .iter()
                    .map(|e| obj([("file", Some(Value::from(e.file))), ("spec", Some(Value::from(e.spec)))]))
                    .collect(),
            )),
        ),
    ]);
    Ok(with_exit(v, EXIT_OK))
}

fn file_stem(spec: &str) -> String {
    spec.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' })
        .collect::<String>()
        .trim_end_matches('_')
        .to_string()
}

/// Writes the catalog, or one file per builtin spec, into `dir`.
pub fn examples_emit(dir: &Path, specs: &[String]) -> CmdResult {
    std::fs::create_dir_all(dir)
        .map_err(|e| InputError::Io { path: dir.display().to_string(), msg: e.to_string() })?;
    let docs: Vec<(String, InputDocument)> = if specs.is_empty() {
        CATALOG.iter().map(|e| Ok((e.file.to_string(), catalog_document(e)?))).collect::<Result<_, CmdError>>()?
    } else {
        specs
            .iter()
            .map(|s| {
                let inst = builtin_from_spec::<BigInt>(s)?;
                Ok((format!("{}.json", file_stem(s)), InputDocument::from_instance(&inst)?))
            })
            .collect::<Result<_, CmdError>>()?
    };
    let mut written = Vec::new();
    for (name, doc) in docs {
        let path = dir.join(&name);
        std::fs::write(&path, doc.to_json())
            .map_err(|e| InputError::Io { path: path.display().to_string(), msg: e.to_string() })?;
        written.push(Value::from(name));
    }
    let v = obj([
        ("command", Some(Value::from("examples"))),
        ("directory", Some(Value::from(dir.display().to_string()))),
        ("written", Some(Value::Array(written))),
    ]);
    Ok(with_exit(v, EXIT_OK))
}

/// Exit status recorded in a report.
pub fn exit_status(v: &Value) -> i32 {
    v.get("exit_status").and_then(Value::as_i64).map(|c| c as i32).unwrap_or(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CmdError::Core(Error::Invariant("x".into())).exit_code(), EXIT_FAIL);
        assert_eq!(CmdError::Core(Error::RequiresNef).exit_code(), EXIT_INPUT);
        assert_eq!(CmdError::Usage("x".into()).exit_code(), EXIT_INPUT);
        assert_eq!(exit_status(&with_exit(obj([]), EXIT_FAIL)), EXIT_FAIL);
    }

    #[test]
    fn catalog_documents_resolve() {
        for e in &CATALOG {
            let doc = catalog_document(e).unwrap();
            doc.instance(None, None).unwrap();
        }
    }

    #[test]
    fn proposition_requires_nef() {
        let flags = VerifyFlags { d: Some("K".into()), ..Default::default() };
        let err = verify(Statement::Proposition, &Source::Builtin("weighted_112".into()), &flags).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_INPUT);
    }

    #[test]
    fn stems() {
        assert_eq!(file_stem("intro_simplex(3,4)"), "intro_simplex_3_4");
    }
}
