//! Seeded random instances built from lattice polytopes, and parallel fuzz
//! batches over them.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{run_check, CheckOptions, Instance, Outcome, Statement};
use crate::divisor::{canonical_divisor, is_q_cartier, TDivisor};
use crate::error::{Error, Result};
use crate::fan::normal_fan;
use crate::intersection::wall_values;
use crate::lattice::dot;
use crate::scalar::{rat, Int};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    /// Upper bound on the number of sampled points.
    pub max_pts: usize,
    /// Points are drawn from `[-coord_bound, coord_bound]^dim`.
    pub coord_bound: i64,
    /// Every wall value of `D` is at least this.
    pub target_t: (i64, i64),
    /// Largest denominator of the coefficients of `D'`.
    pub max_den: i64,
    pub retries: usize,
}

impl RandomConfig {
    pub fn for_dim(dim: usize) -> Self {
        Self {
            max_pts: 6,
            coord_bound: if dim == 2 { 3 } else { 2 },
            target_t: (dim as i64 + 1, 1),
            max_den: 4,
            retries: 200,
        }
    }

    pub fn with_target(mut self, num: i64, den: i64) -> Self {
        self.target_t = (num, den);
        self
    }
}

/// Deterministic in `seed`: the normal fan of a random lattice polytope, `D`
/// its divisor scaled so every wall value is at least the target, and a
/// ℚ-Cartier `D'` with `0 ≥ D' ≥ K_X`.
pub fn random_instance<Z: Int>(dim: usize, seed: u64, cfg: &RandomConfig) -> Result<Instance<Z>> {
    if !(2..=3).contains(&dim) {
        return Err(Error::Invalid("random instances are available in dimension 2 and 3".into()));
    }
    if cfg.max_pts < dim + 1 || cfg.max_den < 1 || cfg.target_t.1 < 1 {
        return Err(Error::Invalid("random configuration out of range".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cfg.retries {
        let count = rng.gen_range(dim + 1..=cfg.max_pts);
        let points: Vec<Vec<Z>> = (0..count)
            .map(|_| (0..dim).map(|_| Z::of(rng.gen_range(-cfg.coord_bound..=cfg.coord_bound))).collect())
            .collect();
        let Ok(nf) = normal_fan(&points, dim) else {
            continue;
        };
        let fan = nf.fan;
        let base = TDivisor::new(nf.coefficients.iter().cloned().map(rat).collect());
        let ld = crate::divisor::require_local_data(&fan, &base)?;
        let min_len = wall_values(&fan, &ld).into_iter().min().expect("complete fans have walls");
        if !min_len.is_positive() {
            return Err(Error::Invariant("polytope divisor has a degenerate edge".into()));
        }
        let target = Ratio::new(Z::of(cfg.target_t.0), Z::of(cfg.target_t.1));
        let mut scale = target / min_len;
        if rng.gen_bool(0.5) {
            scale = scale.ceil();
        }
        let d = base.scale(&scale);
        let dprime = random_dprime(&fan, &nf.vertices, &nf.coefficients, cfg.max_den, &mut rng)?;
        return Instance::new(fan, d, dprime, format!("random(dim={dim},seed={seed})"));
    }
    Err(Error::Degenerate(cfg.retries))
}

fn random_ratio<Z: Int>(rng: &mut ChaCha8Rng, max_den: i64) -> Ratio<Z> {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(0..=den);
    Ratio::new(Z::of(num), Z::of(den))
}

/// On simplicial fans every coefficient vector is ℚ-Cartier, so coefficients
/// are drawn independently. Otherwise `-D'` is a random convex combination of
/// ℚ-Cartier divisors with coefficients in `[0, 1]`: zero, `-K_X` when it is
/// ℚ-Cartier, and the polytope divisor re-based at each vertex and normalized.
fn random_dprime<Z: Int>(
    fan: &crate::fan::Fan<Z>,
    vertices: &[Vec<Z>],
    coefficients: &[Z],
    max_den: i64,
    rng: &mut ChaCha8Rng,
) -> Result<TDivisor<Z>> {
    let len = fan.rays().len();
    if fan.is_simplicial() {
        return Ok(TDivisor::new((0..len).map(|_| -random_ratio::<Z>(rng, max_den)).collect()));
    }
    let mut gens = vec![TDivisor::zero(len)];
    let k = canonical_divisor(fan);
    if is_q_cartier(fan, &k)? {
        gens.push(k.scale(&-Ratio::<Z>::one()));
    }
    for w in vertices {
        let shifted: Vec<Z> = fan
            .rays()
            .iter()
            .zip(coefficients)
            .map(|(v, d)| d.clone() + dot(w, v.coords()))
            .collect();
        let max = shifted.iter().max().cloned().unwrap_or_else(Z::zero);
        if max.is_positive() {
            gens.push(TDivisor::new(shifted.into_iter().map(|c| Ratio::new(c, max.clone())).collect()));
        }
    }
    let weights: Vec<Ratio<Z>> = gens.iter().map(|_| random_ratio::<Z>(rng, max_den)).collect();
    let total = weights.iter().fold(Ratio::zero(), |s, w| s + w);
    let mut dp = TDivisor::zero(len);
    if total.is_zero() {
        return Ok(dp);
    }
    for (g, w) in gens.iter().zip(&weights) {
        dp = dp.add(&g.scale(&(-(w.clone() / total.clone()))));
    }
    Ok(dp)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzOptions {
    pub dim: usize,
    pub seed: u64,
    pub count: usize,
    pub config: RandomConfig,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzRecord {
    pub index: usize,
    pub seed: u64,
    pub outcome: Result<Outcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuzzSummary {
    pub statement: Statement,
    pub records: Vec<FuzzRecord>,
    pub verified: usize,
    pub not_applicable: usize,
    pub falsified: usize,
    pub errors: usize,
}

/// Runs one statement over `count` instances seeded `seed + i`, in parallel;
/// records come back in index order.
pub fn fuzz<Z: Int>(st: Statement, opts: &FuzzOptions, check: &CheckOptions<Z>) -> FuzzSummary {
    let records: Vec<FuzzRecord> = (0..opts.count)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i as u64);
            let outcome = random_instance::<Z>(opts.dim, seed, &opts.config)
                .and_then(|inst| run_check(st, &inst, check))
                .map(|r| r.outcome);
            FuzzRecord { index: i, seed, outcome }
        })
        .collect();
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == Ok(o)).count();
    FuzzSummary {
        statement: st,
        verified: count(Outcome::Verified),
        not_applicable: count(Outcome::NotApplicable),
        falsified: count(Outcome::Falsified),
        errors: records.iter().filter(|r| r.outcome.is_err()).count(),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::dprime_in_range;
    use num_bigint::BigInt;

    #[test]
    fn deterministic_and_in_range() {
        for dim in [2, 3] {
            let cfg = RandomConfig::for_dim(dim);
            for seed in 0..6 {
                let a: Instance<BigInt> = random_instance(dim, seed, &cfg).unwrap();
                let b: Instance<BigInt> = random_instance(dim, seed, &cfg).unwrap();
                assert_eq!(a, b);
                assert!(dprime_in_range(&a.fan, &a.dprime).unwrap());
                assert!(is_q_cartier(&a.fan, &a.dprime).unwrap());
                let ld = crate::divisor::require_local_data(&a.fan, &a.d).unwrap();
                let target = rat(BigInt::from(dim as i64 + 1));
                assert!(wall_values(&a.fan, &ld).iter().all(|v| *v >= target));
            }
        }
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(random_instance::<BigInt>(4, 1, &RandomConfig::for_dim(3)).is_err());
    }

    #[test]
    fn fuzz_is_ordered() {
        let opts = FuzzOptions { dim: 2, seed: 7, count: 4, config: RandomConfig::for_dim(2) };
        let s = fuzz::<BigInt>(Statement::Corollary, &opts, &CheckOptions::default());
        assert_eq!(s.records.iter().map(|r| r.index).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(s.falsified + s.errors, 0);
    }
}
