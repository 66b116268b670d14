//! Intersection numbers of ℚ-Cartier T-divisors with T-curves `V(σ ∩ τ)`.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::divisor::{polytope, require_local_data, LocalData, TDivisor};
use crate::error::{Error, Result};
use crate::fan::{Fan, Wall};
use crate::lattice::{dot, dot_rat, primitive_direction};
use crate::scalar::{rat, Int};

fn quotient<Z: Int>(fan: &Fan<Z>, ld: &LocalData<Z>, w: &Wall<Z>, j: usize) -> Ratio<Z> {
    let v = fan.rays()[j].coords();
    let diff = ld.u(w.sigma).sub(ld.u(w.tau));
    let denom = -rat(dot(w.u.coords(), v));
    dot_rat(diff.coords(), v) / denom
}

/// `D · V(σ ∩ τ) = ⟨u_σ - u_τ, v_j⟩ / -⟨u, v_j⟩`.
pub fn wall_intersection<Z: Int>(fan: &Fan<Z>, ld: &LocalData<Z>, w: &Wall<Z>) -> Ratio<Z> {
    let value = quotient(fan, ld, w, w.v_j);
    if cfg!(any(test, debug_assertions)) {
        for &j in &w.candidates {
            assert_eq!(quotient(fan, ld, w, j), value, "wall value depends on the outside ray");
        }
    }
    value
}

/// Values on every wall of the fan, in [`Fan::walls`] order.
pub fn wall_values<Z: Int>(fan: &Fan<Z>, ld: &LocalData<Z>) -> Vec<Ratio<Z>> {
    fan.walls().iter().map(|w| wall_intersection(fan, ld, w)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCheck<Z: Int> {
    pub wall: usize,
    pub value: Ratio<Z>,
    pub length: Ratio<Z>,
}

/// Lattice length of `[u_σ, u_τ]` in units of the primitive wall normal,
/// computed from the segment alone.
fn edge_length<Z: Int>(ld: &LocalData<Z>, w: &Wall<Z>) -> Result<Ratio<Z>> {
    let diff = ld.u(w.tau).sub(ld.u(w.sigma));
    if diff.is_zero() {
        return Ok(Ratio::zero());
    }
    let dir = primitive_direction(diff.coords()).ok_or(Error::ZeroVector)?;
    let k = dir.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let steps = diff.coords()[k].clone() / rat(dir[k].clone());
    if dir != w.u.coords() {
        return Err(Error::Invariant(format!(
            "edge between cones {} and {} is not parallel to the wall normal",
            w.sigma, w.tau
        )));
    }
    Ok(steps)
}

/// Pairs each wall's intersection number with the lattice length of the
/// matching edge of `P_D`. Only defined for nef `D`.
pub fn edge_length_check<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<Vec<EdgeCheck<Z>>> {
    let ld = require_local_data(fan, d)?;
    if !is_nef_with(fan, d, &ld)? {
        return Err(Error::EdgeLengthsUndefined);
    }
    fan.walls()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            Ok(EdgeCheck { wall: i, value: wall_intersection(fan, &ld, w), length: edge_length(&ld, w)? })
        })
        .collect()
}

fn is_nef_with<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>, ld: &LocalData<Z>) -> Result<bool> {
    let by_walls = wall_values(fan, ld).iter().all(|v| !v.is_negative());
    let p = polytope(fan, d)?;
    let by_polytope = ld.all().iter().all(|u| p.contains(u));
    if by_walls != by_polytope {
        return Err(Error::Invariant("wall test and polytope test disagree on nefness".into()));
    }
    Ok(by_walls)
}

/// Every wall value is nonnegative (checked against `u_σ ∈ P_D` for all `σ`).
pub fn is_nef<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<bool> {
    let ld = require_local_data(fan, d)?;
    is_nef_with(fan, d, &ld)
}

/// `t` and `m` of a maximal cone: minima of `D · V` and `(D + D') · V` over
/// its walls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeMinima<Z: Int> {
    pub t: Ratio<Z>,
    pub m: Ratio<Z>,
    /// Neighbouring cone where each minimum is attained.
    pub t_at: usize,
    pub m_at: usize,
}

pub fn cone_minima<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>, dp: &TDivisor<Z>, sigma: usize) -> Result<ConeMinima<Z>> {
    let ld = require_local_data(fan, d)?;
    let ldp = require_local_data(fan, dp)?;
    Ok(minima_with(fan, &ld, &ld.add(&ldp), sigma))
}

pub(crate) fn minima_with<Z: Int>(fan: &Fan<Z>, ld: &LocalData<Z>, ld_sum: &LocalData<Z>, sigma: usize) -> ConeMinima<Z> {
    let mut best: Option<ConeMinima<Z>> = None;
    for w in fan.walls_of_cone(sigma) {
        let t = wall_intersection(fan, ld, &w);
        let m = wall_intersection(fan, ld_sum, &w);
        match &mut best {
            None => best = Some(ConeMinima { t, m, t_at: w.tau, m_at: w.tau }),
            Some(b) => {
                if t < b.t {
                    b.t = t;
                    b.t_at = w.tau;
                }
                if m < b.m {
                    b.m = m;
                    b.m_at = w.tau;
                }
            }
        }
    }
    best.expect("a maximal cone of a complete fan has at least one wall")
}
