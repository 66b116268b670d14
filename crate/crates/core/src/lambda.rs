//! `λ^min` and `λ^max` on a pointed full-dimensional cone in `M`, dilations
//! of `Δ = conv{0, u_1, …, u_s}`, and the subdivision of the cone by the
//! linearity domains of `λ^max`.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{dot_rat, solve_exact, Ambient, LatticeVector, RatVector, Solution};
use crate::lp::{self, LpOutcome};
use crate::polytope::{Halfspace, Polytope};
use crate::scalar::{rat, Int};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LambdaMode {
    Min,
    Max,
}

/// Optimal `Σ a_i` together with coefficients `a` (aligned with
/// [`Cone::rays`]) realizing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaValue<Z: Int> {
    pub value: Ratio<Z>,
    pub witness: Vec<Ratio<Z>>,
}

fn check_cone<Z: Int>(c: &Cone<Z>) -> Result<()> {
    if c.ambient() != Ambient::M {
        return Err(Error::AmbientMismatch { expected: Ambient::M, found: c.ambient() });
    }
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    Ok(())
}

pub fn lambda<Z: Int>(c: &Cone<Z>, x: &RatVector<Z>, mode: LambdaMode) -> Result<LambdaValue<Z>> {
    check_cone(c)?;
    if !c.contains(x, false)? {
        return Err(Error::OutsideCone);
    }
    let n = c.rank();
    let a: Vec<Vec<Ratio<Z>>> =
        (0..n).map(|i| c.rays().iter().map(|r| rat(r.coords()[i].clone())).collect()).collect();
    let ones = vec![Ratio::one(); c.rays().len()];
    let out = match mode {
        LambdaMode::Min => lp::minimize(&a, x.coords(), &ones),
        LambdaMode::Max => lp::maximize(&a, x.coords(), &ones),
    };
    match out {
        LpOutcome::Optimal { value, solution } => {
            debug_assert!(witness_ok(c, x, &value, &solution));
            Ok(LambdaValue { value, witness: solution })
        }
        // a pointed cone bounds Σ a_i on every fiber
        LpOutcome::Unbounded => Err(Error::Invariant("unbounded fiber over a pointed cone".into())),
        LpOutcome::Infeasible => Err(Error::Invariant("membership and ray combination disagree".into())),
    }
}

/// `Σ a_i u_i = x`, `a ≥ 0` and `Σ a_i = value`.
pub fn witness_ok<Z: Int>(c: &Cone<Z>, x: &RatVector<Z>, value: &Ratio<Z>, a: &[Ratio<Z>]) -> bool {
    if a.len() != c.rays().len() || a.iter().any(|v| v.is_negative()) {
        return false;
    }
    let sum = a.iter().fold(Ratio::zero(), |s, v| s + v);
    let combo = (0..c.rank()).all(|i| {
        let coord = c.rays().iter().zip(a).fold(Ratio::zero(), |s, (r, v)| s + v * rat(r.coords()[i].clone()));
        coord == x.coords()[i]
    });
    sum == *value && combo
}

/// `x ∈ mΔ`, i.e. `x ∈ c` and `λ^min(x) ≤ m`.
pub fn m_delta_contains<Z: Int>(c: &Cone<Z>, m: &Ratio<Z>, x: &RatVector<Z>) -> Result<bool> {
    if !c.contains(x, false)? {
        return Ok(false);
    }
    Ok(lambda(c, x, LambdaMode::Min)?.value <= *m)
}

/// Functionals `φ` that equal 1 on a spanning set of `rank` generators, with
/// `φ(u_j) ≥ 1` (lower) or `φ(u_j) ≤ 1` (upper) on all generators.
fn tight_functionals<Z: Int>(c: &Cone<Z>, lower: bool) -> Vec<RatVector<Z>> {
    let n = c.rank();
    let mut out = BTreeSet::new();
    for subset in (0..c.rays().len()).combinations(n) {
        let rows: Vec<Vec<Ratio<Z>>> =
            subset.iter().map(|&i| c.rays()[i].coords().iter().cloned().map(rat).collect()).collect();
        let Solution::Unique(phi) = solve_exact(&rows, &vec![Ratio::one(); n], n) else {
            continue;
        };
        let ok = c.rays().iter().all(|r| {
            let v = dot_rat(&phi, r.coords());
            if lower {
                v >= Ratio::one()
            } else {
                v <= Ratio::one()
            }
        });
        if ok {
            out.insert(RatVector::new(phi, Ambient::N));
        }
    }
    out.into_iter().collect()
}

/// Facet functionals of the lower faces of `Q = conv{u_i}`; `λ^max` is their
/// pointwise minimum on the cone.
pub fn lower_facet_functionals<Z: Int>(c: &Cone<Z>) -> Vec<RatVector<Z>> {
    tight_functionals(c, true)
}

/// Functionals of the facets of `Δ` away from 0; `λ^min` is their pointwise
/// maximum on the cone.
pub fn upper_facet_functionals<Z: Int>(c: &Cone<Z>) -> Vec<RatVector<Z>> {
    tight_functionals(c, false)
}

/// `mΔ` as a polytope in `M_ℚ`.
pub fn dilated_simplex<Z: Int>(c: &Cone<Z>, m: &Ratio<Z>) -> Result<Polytope<Z>> {
    check_cone(c)?;
    let mut hs: Vec<Halfspace<Z>> =
        c.facets().iter().map(|f| Halfspace { normal: f.clone(), offset: Ratio::zero() }).collect();
    for psi in upper_facet_functionals(c) {
        // ψ(u) ≤ m  ⇔  ⟨u, -kψ⟩ ≥ -k m  with k clearing denominators
        let k = psi.coords().iter().fold(Z::one(), |acc, q| num_integer::Integer::lcm(&acc, q.denom()));
        let normal: Vec<Z> = psi.coords().iter().map(|q| -(q * rat(k.clone())).to_integer()).collect();
        hs.push(Halfspace { normal: LatticeVector::new(normal, Ambient::N), offset: m * rat(k) });
    }
    Ok(Polytope::from_halfspaces(c.rank(), hs))
}

/// Cones over the maximal lower faces of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subdivision<Z: Int> {
    pub parent: Cone<Z>,
    pub cells: Vec<Cone<Z>>,
    /// Indices into `parent.rays()` of the generators on each cell's lower face.
    pub cell_generators: Vec<Vec<usize>>,
    /// The functional equal to `λ^max` on each cell.
    pub functionals: Vec<RatVector<Z>>,
}

pub fn regular_subdivision<Z: Int>(c: &Cone<Z>) -> Result<Subdivision<Z>> {
    check_cone(c)?;
    let mut cells = Vec::new();
    let mut cell_generators = Vec::new();
    let functionals = lower_facet_functionals(c);
    for phi in &functionals {
        let gens: Vec<usize> = (0..c.rays().len())
            .filter(|&i| dot_rat(phi.coords(), c.rays()[i].coords()).is_one())
            .collect();
        let rays: Vec<LatticeVector<Z>> = gens.iter().map(|&i| c.rays()[i].clone()).collect();
        cells.push(Cone::from_generators(&rays, Ambient::M, c.rank())?);
        cell_generators.push(gens);
    }
    Ok(Subdivision { parent: c.clone(), cells, cell_generators, functionals })
}
