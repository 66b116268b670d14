//! Oracles shared by the integration tests. None of them call the routines
//! they check.
#![allow(dead_code)]

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use toric_core::scalar::rat;
use toric_core::{Ambient, Cone, LatticeVector, RatVector, Rational, Solution};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn m_vec(c: &[i64]) -> LatticeVector {
    LatticeVector::from_i64s(c, Ambient::M)
}

pub fn m_rat(c: &[i64]) -> RatVector {
    m_vec(c).to_rat()
}

/// Extremes of `Σ a_i` over the vertices of the fiber `{a ≥ 0 : Σ a_i u_i = x}`,
/// found by solving every square subsystem.
pub fn fiber_extremes(c: &Cone, x: &RatVector) -> (Rational, Rational) {
    let n = c.rank();
    let s = c.rays().len();
    let mut vals = Vec::new();
    for k in 0..=n.min(s) {
        for cols in (0..s).combinations(k) {
            let rows: Vec<Vec<Rational>> =
                (0..n).map(|i| cols.iter().map(|&j| rat(c.rays()[j].coords()[i].clone())).collect()).collect();
            if let Solution::Unique(a) = toric_core::lattice::solve_exact(&rows, x.coords(), k) {
                if a.iter().all(|v| !v.is_negative()) {
                    vals.push(a.iter().fold(Rational::zero(), |acc, v| acc + v));
                }
            }
        }
    }
    let min = vals.iter().min().expect("x lies in the cone").clone();
    let max = vals.iter().max().expect("x lies in the cone").clone();
    (min, max)
}

/// Semigroup membership by memoized descent: `p` is reachable iff `p = 0` or
/// `p - g` is reachable for some nonzero generator `g` with `p - g` in the
/// cone. Terminates because the cone is pointed.
pub struct Membership<'a> {
    cone: &'a Cone,
    gens: Vec<Vec<BigInt>>,
    memo: HashMap<Vec<BigInt>, bool>,
}

impl<'a> Membership<'a> {
    pub fn new(cone: &'a Cone, gens: &[LatticeVector]) -> Self {
        let gens = gens.iter().filter(|g| !g.is_zero()).map(|g| g.coords().to_vec()).collect();
        Self { cone, gens, memo: HashMap::new() }
    }

    pub fn member(&mut self, p: &[BigInt]) -> bool {
        if p.iter().all(Zero::is_zero) {
            return true;
        }
        if let Some(&b) = self.memo.get(p) {
            return b;
        }
        let mut found = false;
        for g in self.gens.clone() {
            let rest: Vec<BigInt> = p.iter().zip(&g).map(|(a, b)| a - b).collect();
            let inside = self.cone.contains(&LatticeVector::new(rest.clone(), Ambient::M).to_rat(), false).unwrap();
            if inside && self.member(&rest) {
                found = true;
                break;
            }
        }
        self.memo.insert(p.to_vec(), found);
        found
    }
}

/// Lattice points of `[-b, b]^n`.
pub fn box_points(n: usize, b: i64) -> impl Iterator<Item = Vec<BigInt>> {
    (0..n).map(|_| -b..=b).multi_cartesian_product().map(|p| p.into_iter().map(BigInt::from).collect())
}
