//! Named example families.

use num_rational::Ratio;
use num_traits::{One, Zero};

use super::Instance;
use crate::divisor::{canonical_divisor, TDivisor};
use crate::error::{Error, Result};
use crate::fan::{normal_fan, Fan};
use crate::lattice::{Ambient, LatticeVector};
use crate::scalar::{from_bigint, parse_rat, rat, Int};

pub const BUILTIN_NAMES: [&str; 7] = [
    "projective_space",
    "weighted_112",
    "hirzebruch",
    "intro_simplex",
    "ew_simplex",
    "product_p1",
    "quadric_cone",
];

/// A builtin parameter: a rational number or a (nested) integer list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinArg {
    Number(Ratio<num_bigint::BigInt>),
    List(Vec<BuiltinArg>),
}

/// Splits `name(arg, ...)` into the name and its arguments. Arguments are
/// JSON values; rationals may be written as `"p/q"` strings.
pub fn parse_builtin_spec(spec: &str) -> Result<(String, Vec<BuiltinArg>)> {
    let spec = spec.trim();
    let (name, args) = match spec.find('(') {
        None => (spec, ""),
        Some(i) => {
            let rest = spec[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Invalid(format!("unbalanced parentheses in {spec:?}")))?;
            (&spec[..i], rest)
        }
    };
    let value: serde_json::Value = serde_json::from_str(&format!("[{args}]"))
        .map_err(|e| Error::Invalid(format!("bad builtin parameters {args:?}: {e}")))?;
    fn conv(v: &serde_json::Value) -> Result<BuiltinArg> {
        match v {
            serde_json::Value::Number(n) => parse_rat(&n.to_string())
                .map(BuiltinArg::Number)
                .ok_or_else(|| Error::Invalid(format!("not an exact number: {n}"))),
            serde_json::Value::String(s) => {
                parse_rat(s).map(BuiltinArg::Number).ok_or_else(|| Error::Invalid(format!("not a rational: {s:?}")))
            }
            serde_json::Value::Array(a) => a.iter().map(conv).collect::<Result<Vec<_>>>().map(BuiltinArg::List),
            other => Err(Error::Invalid(format!("unsupported parameter {other}"))),
        }
    }
    let args = match value {
        serde_json::Value::Array(a) => a.iter().map(conv).collect::<Result<Vec<_>>>()?,
        _ => unreachable!("wrapped in brackets"),
    };
    Ok((name.trim().to_string(), args))
}

pub fn builtin_from_spec<Z: Int>(spec: &str) -> Result<Instance<Z>> {
    let (name, args) = parse_builtin_spec(spec)?;
    builtin(&name, &args)
}

fn number<Z: Int>(a: &BuiltinArg) -> Result<Ratio<Z>> {
    match a {
        BuiltinArg::Number(q) => {
            let n = from_bigint::<Z>(q.numer()).ok_or_else(|| Error::Invalid("parameter too large".into()))?;
            let d = from_bigint::<Z>(q.denom()).ok_or_else(|| Error::Invalid("parameter too large".into()))?;
            Ok(Ratio::new(n, d))
        }
        BuiltinArg::List(_) => Err(Error::Invalid("expected a number, found a list".into())),
    }
}

fn integer(a: &BuiltinArg) -> Result<i64> {
    match a {
        BuiltinArg::Number(q) if q.is_integer() => {
            i64::try_from(q.to_integer()).map_err(|_| Error::Invalid("parameter too large".into()))
        }
        _ => Err(Error::Invalid("expected an integer parameter".into())),
    }
}

fn int_list(a: &BuiltinArg) -> Result<Vec<i64>> {
    match a {
        BuiltinArg::List(xs) => xs.iter().map(integer).collect(),
        _ => Err(Error::Invalid("expected a list of integers".into())),
    }
}

fn arity(name: &str, args: &[BuiltinArg], max: usize) -> Result<()> {
    if args.len() > max {
        return Err(Error::Invalid(format!("{name} takes at most {max} parameters, got {}", args.len())));
    }
    Ok(())
}

fn n_rays<Z: Int>(rays: &[&[i64]]) -> Vec<LatticeVector<Z>> {
    rays.iter().map(|r| LatticeVector::from_i64s(r, Ambient::N)).collect()
}

fn to_z<Z: Int>(rows: &[Vec<i64>]) -> Vec<Vec<Z>> {
    rows.iter().map(|r| r.iter().map(|&x| Z::of(x)).collect()).collect()
}

/// Builds a named instance. `D'` is `K_X` except for `intro_simplex`, where it
/// is minus the sum of the divisors of the distinguished cone's rays.
pub fn builtin<Z: Int>(name: &str, args: &[BuiltinArg]) -> Result<Instance<Z>> {
    match name {
        "projective_space" => {
            arity(name, args, 2)?;
            let n = args.first().map(integer).transpose()?.unwrap_or(2);
            if !(1..=6).contains(&n) {
                return Err(Error::Invalid("projective_space needs 1 <= n <= 6".into()));
            }
            let n = n as usize;
            let t = args.get(1).map(number::<Z>).transpose()?.unwrap_or_else(|| rat(Z::of(n as i64 + 1)));
            let mut rays = vec![LatticeVector::new(vec![-Z::one(); n], Ambient::N)];
            for i in 0..n {
                let mut e = vec![Z::zero(); n];
                e[i] = Z::one();
                rays.push(LatticeVector::new(e, Ambient::N));
            }
            let cones: Vec<Vec<usize>> =
                (0..=n).map(|skip| (0..=n).filter(|&i| i != skip).collect()).collect();
            let fan = Fan::build(&cones, rays, n)?;
            let d = TDivisor::prime(n + 1, 0).scale(&t);
            let k = canonical_divisor(&fan);
            Instance::new(fan, d, k, format!("projective_space({n},{})", crate::scalar::rat_to_string(&t)))
        }
        "weighted_112" => {
            arity(name, args, 0)?;
            let fan = Fan::build(&[vec![0, 1], vec![1, 2], vec![0, 2]], n_rays(&[&[1, 1], &[-1, 1], &[0, -1]]), 2)?;
            let k = canonical_divisor(&fan);
            Instance::new(fan, TDivisor::prime(3, 0), k, "weighted_112")
        }
        "hirzebruch" => {
            arity(name, args, 2)?;
            let a = args.first().map(integer).transpose()?.unwrap_or(1);
            let coeffs = args.get(1).map(int_list).transpose()?.unwrap_or_else(|| vec![0, 0, 1, 1]);
            if coeffs.len() != 4 {
                return Err(Error::Invalid("hirzebruch needs four divisor coefficients".into()));
            }
            let fan = Fan::build(
                &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
                n_rays(&[&[1, 0], &[0, 1], &[-1, a], &[0, -1]]),
                2,
            )?;
            let k = canonical_divisor(&fan);
            Instance::new(fan, TDivisor::from_ints(&coeffs), k, format!("hirzebruch({a},{coeffs:?})"))
        }
        "intro_simplex" => {
            arity(name, args, 2)?;
            let us: Vec<Vec<i64>> = match args.first() {
                None => vec![vec![1, 0], vec![1, 2]],
                Some(BuiltinArg::Number(_)) => match integer(&args[0])? {
                    2 => vec![vec![1, 0], vec![1, 2]],
                    3 => vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]],
                    n => return Err(Error::Invalid(format!("no default vectors for n = {n}"))),
                },
                Some(BuiltinArg::List(rows)) => rows.iter().map(int_list).collect::<Result<_>>()?,
            };
            let n = us.len();
            if n == 0 || us.iter().any(|u| u.len() != n) {
                return Err(Error::Invalid("intro_simplex needs n vectors of length n".into()));
            }
            let t = args.get(1).map(number::<Z>).transpose()?.unwrap_or_else(|| rat(Z::of(n as i64 + 1)));
            let mut pts = vec![vec![0; n]];
            pts.extend(us.iter().cloned());
            let label = format!("intro_simplex({us:?},{})", crate::scalar::rat_to_string(&t));
            let (inst, vertices) = simplex_instance::<Z>(&to_z(&pts), &t, label)?;
            let sigma0 = origin_cone(&vertices)?;
            let mut dp = TDivisor::zero(inst.fan.rays().len());
            for &i in &inst.fan.cone(sigma0).ray_indices {
                dp = dp.add(&TDivisor::prime(inst.fan.rays().len(), i).scale(&-Ratio::<Z>::one()));
            }
            Ok(Instance { dprime: dp, ..inst })
        }
        "ew_simplex" => {
            arity(name, args, 1)?;
            let t = args.first().map(number::<Z>).transpose()?.unwrap_or_else(|| rat(Z::of(4)));
            let pts = to_z(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 2]]);
            let (inst, _) = simplex_instance::<Z>(&pts, &t, format!("ew_simplex({})", crate::scalar::rat_to_string(&t)))?;
            let k = canonical_divisor(&inst.fan);
            Ok(Instance { dprime: k, ..inst })
        }
        "product_p1" => {
            arity(name, args, 2)?;
            let a = args.first().map(number::<Z>).transpose()?.unwrap_or_else(|| rat(Z::of(2)));
            let b = args.get(1).map(number::<Z>).transpose()?.unwrap_or_else(|| rat(Z::of(2)));
            let fan = Fan::build(
                &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
                n_rays(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]]),
                2,
            )?;
            let d = TDivisor::new(vec![Ratio::zero(), Ratio::zero(), a.clone(), b.clone()]);
            let k = canonical_divisor(&fan);
            let label = format!("product_p1({},{})", crate::scalar::rat_to_string(&a), crate::scalar::rat_to_string(&b));
            Instance::new(fan, d, k, label)
        }
        "quadric_cone" => {
            arity(name, args, 1)?;
            let t = args.first().map(number::<Z>).transpose()?.unwrap_or_else(Ratio::one);
            let pts = to_z(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]);
            let (inst, _) = simplex_instance::<Z>(&pts, &t, format!("quadric_cone({})", crate::scalar::rat_to_string(&t)))?;
            let k = canonical_divisor(&inst.fan);
            Ok(Instance { dprime: k, ..inst })
        }
        other => Err(Error::UnknownInstance(other.to_string())),
    }
}

/// Normal fan of `conv(points)` and its vertex per cone, with `D = t · (polytope divisor)` and `D' = 0`.
fn simplex_instance<Z: Int>(points: &[Vec<Z>], t: &Ratio<Z>, label: String) -> Result<(Instance<Z>, Vec<Vec<Z>>)> {
    let rank = points[0].len();
    let nf = normal_fan(points, rank)?;
    let d = TDivisor::new(nf.coefficients.iter().map(|c| rat(c.clone()) * t.clone()).collect());
    let zero = TDivisor::zero(nf.fan.rays().len());
    Ok((Instance::new(nf.fan, d, zero, label)?, nf.vertices))
}

/// The maximal cone belonging to the vertex at the origin.
fn origin_cone<Z: Int>(vertices: &[Vec<Z>]) -> Result<usize> {
    vertices
        .iter()
        .position(|v| v.iter().all(Zero::is_zero))
        .ok_or_else(|| Error::Invariant("the origin is not a vertex".into()))
}
