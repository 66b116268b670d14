//! Executable hypothesis/conclusion checks of the positivity statements over
//! concrete instances `(X, D, D')`.

mod builtins;
mod random;

pub use builtins::{builtin, builtin_from_spec, parse_builtin_spec, BuiltinArg, BUILTIN_NAMES};
pub use random::{fuzz, random_instance, FuzzOptions, FuzzRecord, FuzzSummary, RandomConfig};

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Signed};

use crate::cone::Cone;
use crate::divisor::{dprime_in_range, local_data, polytope, LocalData, TDivisor};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::intersection::{is_nef, minima_with, wall_intersection, wall_values};
use crate::lambda::{lambda, lower_facet_functionals, LambdaMode};
use crate::lattice::{det, dot_rat, Ambient, LatticeVector, RatVector};
use crate::scalar::{rat, Int};
use crate::semigroup::{generates, lattice_points};

/// A complete toric variety with two T-divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance<Z: Int> {
    pub fan: Fan<Z>,
    pub d: TDivisor<Z>,
    pub dprime: TDivisor<Z>,
    pub label: String,
}

impl<Z: Int> Instance<Z> {
    pub fn new(fan: Fan<Z>, d: TDivisor<Z>, dprime: TDivisor<Z>, label: impl Into<String>) -> Result<Self> {
        for div in [&d, &dprime] {
            if div.len() != fan.rays().len() {
                return Err(Error::Invalid(format!(
                    "divisor has {} coefficients but the fan has {} rays",
                    div.len(),
                    fan.rays().len()
                )));
            }
        }
        Ok(Self { fan, d, dprime, label: label.into() })
    }

    pub fn rank(&self) -> usize {
        self.fan.rank()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Theorem2,
    FujinoPlus,
    Corollary,
    Proposition,
    Lemma1,
    Lemma3,
    Lemma4,
}

impl Statement {
    pub const ALL: [Statement; 7] = [
        Statement::Theorem2,
        Statement::FujinoPlus,
        Statement::Corollary,
        Statement::Proposition,
        Statement::Lemma1,
        Statement::Lemma3,
        Statement::Lemma4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statement::Theorem2 => "theorem2",
            Statement::FujinoPlus => "fujino",
            Statement::Corollary => "corollary",
            Statement::Proposition => "proposition",
            Statement::Lemma1 => "lemma1",
            Statement::Lemma3 => "lemma3",
            Statement::Lemma4 => "lemma4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|st| st.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Verified,
    Falsified,
    NotApplicable,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Falsified => "falsified",
            Outcome::NotApplicable => "not_applicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness<Z: Int> {
    /// A Hilbert basis element of `σ^∨` missing from `P^σ_{D+D'} ∩ M`.
    MissingGenerator { cone: usize, element: LatticeVector<Z> },
    /// A T-curve on which `D + D'` is negative.
    NegativeWall { sigma: usize, tau: usize, value: Ratio<Z> },
    /// A point that should lie in `P^σ_{D+D'}` but does not.
    PointOutside { cone: usize, point: LatticeVector<Z> },
    /// `lhs ≥ rhs` was expected on this cone.
    Inequality { cone: usize, lhs: Ratio<Z>, rhs: Ratio<Z> },
    /// Interior lattice point with `λ^max` below `λ^max(u'_σ)`.
    InteriorPoint { cone: usize, point: LatticeVector<Z>, value: Ratio<Z> },
}

/// Quantities attached to one maximal cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeData<Z: Int> {
    pub cone: usize,
    pub t: Option<Ratio<Z>>,
    pub m: Option<Ratio<Z>>,
    pub u_prime: Option<RatVector<Z>>,
    pub lambda_min: Option<Ratio<Z>>,
    pub lambda_max: Option<Ratio<Z>>,
    /// Right-hand side of the per-cone inequality, where there is one.
    pub bound: Option<Ratio<Z>>,
    /// Whether the per-cone hypotheses hold; `None` for statements without any.
    pub applicable: Option<bool>,
    pub holds: Option<bool>,
    pub note: Option<String>,
}

impl<Z: Int> ConeData<Z> {
    fn empty(cone: usize) -> Self {
        Self {
            cone,
            t: None,
            m: None,
            u_prime: None,
            lambda_min: None,
            lambda_max: None,
            bound: None,
            applicable: None,
            holds: None,
            note: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport<Z: Int> {
    pub statement: Statement,
    pub label: String,
    pub hypotheses: Vec<Hypothesis>,
    /// The conclusion as computed, regardless of the hypotheses; `None` when
    /// it cannot be evaluated (e.g. a divisor is not ℚ-Cartier).
    pub conclusion: Option<bool>,
    pub outcome: Outcome,
    pub witnesses: Vec<Witness<Z>>,
    pub cones: Vec<ConeData<Z>>,
    /// Emitted when `D + D'` is Cartier and the generation test ran.
    pub very_ample: Option<bool>,
}

impl<Z: Int> CheckReport<Z> {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn hypothesis(&self, name: &str) -> Option<&Hypothesis> {
        self.hypotheses.iter().find(|h| h.name == name)
    }

    fn finish(mut self) -> Self {
        let per_cone: Vec<&ConeData<Z>> = self.cones.iter().filter(|c| c.applicable.is_some()).collect();
        self.outcome = if !self.hypotheses_hold() {
            Outcome::NotApplicable
        } else if !per_cone.is_empty() {
            let applicable: Vec<_> = per_cone.iter().filter(|c| c.applicable == Some(true)).collect();
            if applicable.is_empty() {
                Outcome::NotApplicable
            } else if applicable.iter().all(|c| c.holds == Some(true)) {
                Outcome::Verified
            } else {
                Outcome::Falsified
            }
        } else {
            match self.conclusion {
                Some(true) => Outcome::Verified,
                Some(false) => Outcome::Falsified,
                None => Outcome::NotApplicable,
            }
        };
        self
    }
}

/// `n + 1` rays summing to zero, every `n` of them a lattice basis, and every
/// `n`-subset a maximal cone.
pub fn is_projective_space<Z: Int>(fan: &Fan<Z>) -> bool {
    let n = fan.rank();
    let rays = fan.rays();
    if rays.len() != n + 1 || fan.cones().len() != n + 1 {
        return false;
    }
    let sum_zero = (0..n).all(|k| rays.iter().fold(Z::zero(), |s, r| s + r.coords()[k].clone()).is_zero());
    if !sum_zero {
        return false;
    }
    let mut expected: Vec<Vec<usize>> = (0..=n).combinations(n).collect();
    let mut actual: Vec<Vec<usize>> = fan.cones().iter().map(|c| c.ray_indices.clone()).collect();
    expected.sort();
    actual.sort();
    if expected != actual {
        return false;
    }
    actual.iter().all(|idx| {
        let m: Vec<Vec<Z>> = idx.iter().map(|&i| rays[i].coords().to_vec()).collect();
        det(&m).abs().is_one()
    })
}

/// Everything the checks share, computed once per instance.
struct Context<Z: Int> {
    n: usize,
    ld: Option<LocalData<Z>>,
    ldp: Option<LocalData<Z>>,
    sum: TDivisor<Z>,
    ld_sum: Option<LocalData<Z>>,
    duals: Vec<Cone<Z>>,
    is_pn: bool,
    range_ok: bool,
}

impl<Z: Int> Context<Z> {
    fn new(inst: &Instance<Z>) -> Result<Self> {
        let ld = local_data(&inst.fan, &inst.d)?.ok();
        let ldp = local_data(&inst.fan, &inst.dprime)?.ok();
        let ld_sum = match (&ld, &ldp) {
            (Some(a), Some(b)) => Some(a.add(b)),
            _ => None,
        };
        let duals = inst.fan.cones().iter().map(|c| c.cone.dual()).collect::<Result<Vec<_>>>()?;
        Ok(Self {
            n: inst.rank(),
            ld,
            ldp,
            sum: inst.d.add(&inst.dprime),
            ld_sum,
            duals,
            is_pn: is_projective_space(&inst.fan),
            range_ok: dprime_in_range(&inst.fan, &inst.dprime)?,
        })
    }

    fn min_wall(&self, fan: &Fan<Z>) -> Option<Ratio<Z>> {
        self.ld.as_ref().and_then(|ld| wall_values(fan, ld).into_iter().min())
    }

    fn hypotheses(&self, fan: &Fan<Z>, bound: Option<Ratio<Z>>, exclude_pn: bool) -> Vec<Hypothesis> {
        let mut h = vec![Hypothesis { name: "complete", holds: true, detail: "fan validated as complete".into() }];
        if exclude_pn {
            h.push(Hypothesis {
                name: "not_projective_space",
                holds: !self.is_pn,
                detail: if self.is_pn { "X is P^n".into() } else { "X is not P^n".into() },
            });
        }
        h.push(Hypothesis {
            name: "d_q_cartier",
            holds: self.ld.is_some(),
            detail: String::new(),
        });
        h.push(Hypothesis {
            name: "dprime_q_cartier",
            holds: self.ldp.is_some(),
            detail: String::new(),
        });
        h.push(Hypothesis { name: "dprime_range", holds: self.range_ok, detail: "0 >= D' >= K_X".into() });
        if let Some(b) = bound {
            let min = self.min_wall(fan);
            h.push(Hypothesis {
                name: "wall_bound",
                holds: min.as_ref().is_some_and(|m| *m >= b),
                detail: match min {
                    Some(m) => format!("min D.C = {} (need >= {})", crate::scalar::rat_to_string(&m), crate::scalar::rat_to_string(&b)),
                    None => "D is not Q-Cartier".into(),
                },
            });
        }
        h
    }

    /// `t`, `m`, `u'_σ` and both λ-values of `u'_σ` where defined.
    fn cone_data(&self, fan: &Fan<Z>, sigma: usize) -> Result<ConeData<Z>> {
        let mut cd = ConeData::empty(sigma);
        if let (Some(ld), Some(sum)) = (&self.ld, &self.ld_sum) {
            let mins = minima_with(fan, ld, sum, sigma);
            cd.t = Some(mins.t);
            cd.m = Some(mins.m);
        }
        if let Some(ldp) = &self.ldp {
            let up = ldp.u(sigma).clone();
            if self.duals[sigma].contains(&up, false)? {
                cd.lambda_min = Some(lambda(&self.duals[sigma], &up, LambdaMode::Min)?.value);
                cd.lambda_max = Some(lambda(&self.duals[sigma], &up, LambdaMode::Max)?.value);
            }
            cd.u_prime = Some(up);
        }
        Ok(cd)
    }

    fn all_cone_data(&self, fan: &Fan<Z>) -> Result<Vec<ConeData<Z>>> {
        (0..fan.cones().len()).map(|s| self.cone_data(fan, s)).collect()
    }
}

fn report<Z: Int>(statement: Statement, inst: &Instance<Z>, hypotheses: Vec<Hypothesis>) -> CheckReport<Z> {
    CheckReport {
        statement,
        label: inst.label.clone(),
        hypotheses,
        conclusion: None,
        outcome: Outcome::NotApplicable,
        witnesses: Vec::new(),
        cones: Vec::new(),
        very_ample: None,
    }
}

fn n_plus<Z: Int>(n: usize, k: i64) -> Ratio<Z> {
    rat(Z::of(n as i64 + k))
}

/// `P^σ_{D+D'} ∩ M` generates `σ^∨ ∩ M` for every maximal cone.
pub fn check_theorem2<Z: Int>(inst: &Instance<Z>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let mut r = report(Statement::Theorem2, inst, ctx.hypotheses(&inst.fan, Some(n_plus(ctx.n, 1)), true));
    r.cones = ctx.all_cone_data(&inst.fan)?;
    if let Some(ld_sum) = &ctx.ld_sum {
        let p = polytope(&inst.fan, &ctx.sum)?;
        let mut all = true;
        for sigma in 0..inst.fan.cones().len() {
            let pts = lattice_points(&p.translated(ld_sum.u(sigma)))?;
            let g = generates(&pts, &ctx.duals[sigma])?;
            r.cones[sigma].holds = Some(g.generates);
            if let Some(missing) = g.missing {
                all = false;
                r.witnesses.push(Witness::MissingGenerator { cone: sigma, element: missing });
            }
        }
        r.conclusion = Some(all);
        if ld_sum.all().iter().all(RatVector::is_integral) {
            r.very_ample = Some(all);
        }
    }
    Ok(r.finish())
}

/// `P^σ_{D+D'}` contains 0 and the primitive ray generators of `σ^∨`.
pub fn check_lemma1<Z: Int>(inst: &Instance<Z>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let mut r = report(Statement::Lemma1, inst, ctx.hypotheses(&inst.fan, Some(n_plus(ctx.n, 1)), true));
    r.cones = ctx.all_cone_data(&inst.fan)?;
    if let Some(ld_sum) = &ctx.ld_sum {
        let p = polytope(&inst.fan, &ctx.sum)?;
        let mut all = true;
        for sigma in 0..inst.fan.cones().len() {
            let ps = p.translated(ld_sum.u(sigma));
            let zero = LatticeVector::zero(ctx.n, Ambient::M);
            let mut ok = true;
            for point in std::iter::once(&zero).chain(ctx.duals[sigma].rays()) {
                if !ps.contains(&point.to_rat()) {
                    ok = false;
                    r.witnesses.push(Witness::PointOutside { cone: sigma, point: point.clone() });
                }
            }
            r.cones[sigma].holds = Some(ok);
            all &= ok;
        }
        r.conclusion = Some(all);
    }
    Ok(r.finish())
}

fn nef_conclusion<Z: Int>(inst: &Instance<Z>, ctx: &Context<Z>, r: &mut CheckReport<Z>) -> Result<()> {
    if let Some(ld_sum) = &ctx.ld_sum {
        let nef = is_nef(&inst.fan, &ctx.sum)?;
        for w in inst.fan.walls() {
            let value = wall_intersection(&inst.fan, ld_sum, w);
            if value.is_negative() {
                r.witnesses.push(Witness::NegativeWall { sigma: w.sigma, tau: w.tau, value });
            }
        }
        debug_assert_eq!(nef, r.witnesses.is_empty());
        r.conclusion = Some(nef);
    }
    Ok(())
}

/// `D · C ≥ n` on all T-curves and `X ≇ ℙⁿ` imply `D + D'` nef.
pub fn check_fujino_plus<Z: Int>(inst: &Instance<Z>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let mut r = report(Statement::FujinoPlus, inst, ctx.hypotheses(&inst.fan, Some(n_plus(ctx.n, 0)), true));
    r.cones = ctx.all_cone_data(&inst.fan)?;
    nef_conclusion(inst, &ctx, &mut r)?;
    Ok(r.finish())
}

/// `D · C ≥ n + 1` on all T-curves implies `D + D'` nef, with no exclusion.
pub fn check_corollary<Z: Int>(inst: &Instance<Z>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let mut r = report(Statement::Corollary, inst, ctx.hypotheses(&inst.fan, Some(n_plus(ctx.n, 1)), false));
    r.cones = ctx.all_cone_data(&inst.fan)?;
    nef_conclusion(inst, &ctx, &mut r)?;
    Ok(r.finish())
}

fn cones_of<Z: Int>(inst: &Instance<Z>, sigma: Option<usize>) -> Result<Vec<usize>> {
    match sigma {
        Some(s) if s >= inst.fan.cones().len() => {
            Err(Error::Invalid(format!("no maximal cone {s}; the fan has {}", inst.fan.cones().len())))
        }
        Some(s) => Ok(vec![s]),
        None => Ok((0..inst.fan.cones().len()).collect()),
    }
}

/// `m ≥ t - λ^min(u'_σ) - r` whenever `t ≥ λ^min(u'_σ)`. Without `r` the
/// global hypothesis `0 ≥ D' ≥ K_X` is used with `r = 1`; with `r` the local
/// conditions near each `σ` replace it.
pub fn check_proposition<Z: Int>(inst: &Instance<Z>, sigma: Option<usize>, r: Option<Ratio<Z>>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let cones = cones_of(inst, sigma)?;
    if let Some(e) = local_data(&inst.fan, &inst.d)?.err().or(local_data(&inst.fan, &inst.dprime)?.err()) {
        return Err(e.into());
    }
    if !is_nef(&inst.fan, &inst.d)? {
        return Err(Error::RequiresNef);
    }
    let mut hyps = ctx.hypotheses(&inst.fan, None, false);
    if r.is_some() {
        hyps.retain(|h| h.name != "dprime_range");
    }
    let radius = r.clone().unwrap_or_else(Ratio::one);
    let mut rep = report(Statement::Proposition, inst, hyps);
    let coeffs = inst.dprime.coeffs();
    for s in cones {
        let mut cd = ctx.cone_data(&inst.fan, s)?;
        let mut local_ok = true;
        let mut notes = Vec::new();
        if r.is_some() {
            let minus_effective = inst.fan.cone(s).ray_indices.iter().all(|&i| !coeffs[i].is_positive());
            let near = inst
                .fan
                .walls_of_cone(s)
                .iter()
                .all(|w| w.candidates.iter().any(|&j| coeffs[j] >= -radius.clone()));
            if !minus_effective {
                notes.push("D' is not minus-effective on U_sigma".to_string());
            }
            if !near {
                notes.push("some adjacent cone has no outside ray with d'_j >= -r".to_string());
            }
            local_ok = minus_effective && near;
        }
        let (t, m) = (cd.t.clone().expect("Q-Cartier"), cd.m.clone().expect("Q-Cartier"));
        match cd.lambda_min.clone() {
            Some(lmin) => {
                let bound = t.clone() - lmin.clone() - radius.clone();
                let applicable = local_ok && t >= lmin;
                if t < lmin {
                    notes.push("t < lambda_min(u'_sigma)".to_string());
                }
                let holds = m >= bound;
                if applicable && !holds {
                    rep.witnesses.push(Witness::Inequality { cone: s, lhs: m.clone(), rhs: bound.clone() });
                }
                cd.bound = Some(bound);
                cd.applicable = Some(applicable);
                cd.holds = Some(holds);
            }
            None => {
                notes.push("u'_sigma is outside the dual cone".to_string());
                cd.applicable = Some(false);
            }
        }
        if !notes.is_empty() {
            cd.note = Some(notes.join("; "));
        }
        rep.cones.push(cd);
    }
    rep.conclusion = Some(rep.cones.iter().filter(|c| c.applicable == Some(true)).all(|c| c.holds == Some(true)));
    Ok(rep.finish())
}

/// `λ^max(u'_σ) ≤ λ^max(u)` for every interior lattice point `u` of `σ^∨`
/// with `|u_i| ≤ bound`.
pub fn check_lemma3<Z: Int>(inst: &Instance<Z>, sigma: Option<usize>, bound: u32) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let cones = cones_of(inst, sigma)?;
    let hyps: Vec<Hypothesis> = ctx
        .hypotheses(&inst.fan, None, false)
        .into_iter()
        .filter(|h| h.name != "d_q_cartier")
        .collect();
    let mut rep = report(Statement::Lemma3, inst, hyps);
    for s in cones {
        let mut cd = ctx.cone_data(&inst.fan, s)?;
        if let Some(lmax) = cd.lambda_max.clone() {
            let dual = &ctx.duals[s];
            let lower = lower_facet_functionals(dual);
            let mut ok = true;
            let mut checked = 0usize;
            for point in box_points::<Z>(ctx.n, bound) {
                if !dual.contains_interior_point(&point) {
                    continue;
                }
                checked += 1;
                let value = lower.iter().map(|phi| dot_rat(phi.coords(), &point)).min().expect("nonempty");
                if value < lmax {
                    ok = false;
                    rep.witnesses.push(Witness::InteriorPoint {
                        cone: s,
                        point: LatticeVector::new(point, Ambient::M),
                        value,
                    });
                }
            }
            cd.bound = Some(lmax);
            cd.applicable = Some(true);
            cd.holds = Some(ok);
            cd.note = Some(format!("{checked} interior points checked"));
        } else {
            cd.applicable = Some(false);
        }
        rep.cones.push(cd);
    }
    rep.conclusion = Some(rep.cones.iter().filter(|c| c.applicable == Some(true)).all(|c| c.holds == Some(true)));
    Ok(rep.finish())
}

fn box_points<Z: Int>(n: usize, bound: u32) -> impl Iterator<Item = Vec<Z>> {
    let b = bound as i64;
    (0..n).map(|_| -b..=b).multi_cartesian_product().map(|p| p.into_iter().map(Z::of).collect())
}

/// `λ^min(u'_σ) ≤ n - 1` on every non-regular maximal cone.
pub fn check_lemma4<Z: Int>(inst: &Instance<Z>, sigma: Option<usize>) -> Result<CheckReport<Z>> {
    let ctx = Context::new(inst)?;
    let cones = cones_of(inst, sigma)?;
    let hyps: Vec<Hypothesis> = ctx
        .hypotheses(&inst.fan, None, false)
        .into_iter()
        .filter(|h| h.name != "d_q_cartier")
        .collect();
    let mut rep = report(Statement::Lemma4, inst, hyps);
    let limit = n_plus::<Z>(ctx.n, -1);
    for s in cones {
        let mut cd = ctx.cone_data(&inst.fan, s)?;
        let regular = inst.fan.cone(s).cone.classify().regular;
        cd.bound = Some(limit.clone());
        match (&cd.lambda_min, regular) {
            (_, true) => {
                cd.applicable = Some(false);
                cd.note = Some("cone is regular".into());
            }
            (Some(lmin), false) => {
                let holds = *lmin <= limit;
                if !holds {
                    rep.witnesses.push(Witness::Inequality { cone: s, lhs: limit.clone(), rhs: lmin.clone() });
                }
                cd.applicable = Some(true);
                cd.holds = Some(holds);
            }
            (None, false) => cd.applicable = Some(false),
        }
        rep.cones.push(cd);
    }
    rep.conclusion = Some(rep.cones.iter().filter(|c| c.applicable == Some(true)).all(|c| c.holds == Some(true)));
    Ok(rep.finish())
}

/// Options for the statements that take extra parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions<Z: Int> {
    pub sigma: Option<usize>,
    pub r: Option<Ratio<Z>>,
    pub interior_bound: u32,
}

impl<Z: Int> Default for CheckOptions<Z> {
    fn default() -> Self {
        Self { sigma: None, r: None, interior_bound: 5 }
    }
}

pub fn run_check<Z: Int>(st: Statement, inst: &Instance<Z>, opts: &CheckOptions<Z>) -> Result<CheckReport<Z>> {
    match st {
        Statement::Theorem2 => check_theorem2(inst),
        Statement::FujinoPlus => check_fujino_plus(inst),
        Statement::Corollary => check_corollary(inst),
        Statement::Proposition => check_proposition(inst, opts.sigma, opts.r.clone()),
        Statement::Lemma1 => check_lemma1(inst),
        Statement::Lemma3 => check_lemma3(inst, opts.sigma, opts.interior_bound),
        Statement::Lemma4 => check_lemma4(inst, opts.sigma),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type I = Instance<BigInt>;

    fn q(n: i64, d: i64) -> Ratio<BigInt> {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }

    fn get(spec: &str) -> I {
        builtin_from_spec(spec).unwrap()
    }

    #[test]
    fn projective_space_recognition() {
        assert!(is_projective_space(&get("projective_space(2,3)").fan));
        assert!(is_projective_space(&get("projective_space(3,4)").fan));
        assert!(!is_projective_space(&get("weighted_112").fan));
        assert!(!is_projective_space(&get("product_p1(2,2)").fan));
        assert!(!is_projective_space(&get("ew_simplex(4)").fan));
    }

    #[test]
    fn theorem2_examples() {
        let r = check_theorem2(&get("intro_simplex(2,3)")).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        let r = check_theorem2(&get("ew_simplex(4)")).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        let r = check_theorem2(&get("projective_space(2,3)")).unwrap();
        assert_eq!(r.outcome, Outcome::NotApplicable);
        assert_eq!(r.conclusion, Some(false));
        assert_eq!(r.very_ample, Some(false));
        assert!(!r.hypothesis("not_projective_space").unwrap().holds);
    }

    #[test]
    fn nef_statement_examples() {
        assert_eq!(check_fujino_plus(&get("product_p1(2,2)")).unwrap().outcome, Outcome::Verified);
        let r = check_fujino_plus(&get("projective_space(2,2)")).unwrap();
        assert_eq!((r.outcome, r.conclusion), (Outcome::NotApplicable, Some(false)));
        assert!(r.witnesses.iter().all(|w| matches!(w, Witness::NegativeWall { value, .. } if *value == q(-1, 1))));
        assert_eq!(check_corollary(&get("projective_space(2,3)")).unwrap().outcome, Outcome::Verified);
        assert_eq!(check_corollary(&get("projective_space(3,4)")).unwrap().outcome, Outcome::Verified);
    }

    #[test]
    fn weighted_plane_proposition() {
        let inst = get("weighted_112");
        let r = check_proposition(&inst, Some(1), None).unwrap();
        assert_eq!(r.outcome, Outcome::NotApplicable);
        let cd = &r.cones[0];
        assert_eq!(cd.t, Some(q(1, 2)));
        assert_eq!(cd.lambda_min, Some(q(2, 1)));
        assert_eq!(cd.m, Some(q(-3, 1)));
        assert_eq!(cd.bound, Some(q(-5, 2)));
        assert_eq!(cd.holds, Some(false));
        assert_eq!(cd.applicable, Some(false));
    }

    #[test]
    fn plane_proposition() {
        let r = check_proposition(&get("projective_space(2,4)"), None, None).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        for cd in &r.cones {
            assert_eq!((cd.t.clone(), cd.m.clone(), cd.lambda_min.clone()), (Some(q(4, 1)), Some(q(1, 1)), Some(q(2, 1))));
        }
        let bad = I::new(
            get("projective_space(2,1)").fan,
            TDivisor::from_ints(&[-1, 0, 0]),
            TDivisor::zero(3),
            "anti",
        )
        .unwrap();
        assert_eq!(check_proposition(&bad, None, None), Err(Error::RequiresNef));
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(check_lemma1(&get("ew_simplex(4)")).unwrap().outcome, Outcome::Verified);
        let ew = get("ew_simplex(4)");
        let r = check_lemma3(&ew, None, 3).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        let r = check_lemma4(&get("weighted_112"), None).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
        assert_eq!(r.cones.iter().filter(|c| c.applicable == Some(true)).count(), 1);
        let r = check_lemma4(&ew, None).unwrap();
        assert_eq!(r.outcome, Outcome::Verified);
    }
}
