//! T-invariant ℚ-divisors `Σ d_i D_i`: local data `u_σ`, Cartier tests and
//! the polytopes `P_D`, `P_D^σ`.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::lattice::{solve_exact, Ambient, RatVector, Solution};
use crate::polytope::{Halfspace, Polytope};
use crate::scalar::{rat, Int};

/// One rational coefficient per ray of the fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TDivisor<Z: Int> {
    coeffs: Vec<Ratio<Z>>,
}

impl<Z: Int> TDivisor<Z> {
    pub fn new(coeffs: Vec<Ratio<Z>>) -> Self {
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(Z::of(c))).collect())
    }

    pub fn zero(len: usize) -> Self {
        Self::new(vec![Ratio::zero(); len])
    }

    /// `D_i`.
    pub fn prime(len: usize, i: usize) -> Self {
        let mut d = Self::zero(len);
        d.coeffs[i] = Ratio::one();
        d
    }

    pub fn coeffs(&self) -> &[Ratio<Z>] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, t: &Ratio<Z>) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * t).collect())
    }

    fn check_len(&self, fan: &Fan<Z>) -> Result<()> {
        if self.len() != fan.rays().len() {
            return Err(Error::Invalid(format!(
                "divisor has {} coefficients but the fan has {} rays",
                self.len(),
                fan.rays().len()
            )));
        }
        Ok(())
    }
}

/// `u_σ` for every maximal cone, with `⟨u_σ, v_i⟩ = -d_i` on the rays of `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData<Z: Int> {
    u_sigma: Vec<RatVector<Z>>,
}

impl<Z: Int> LocalData<Z> {
    pub fn u(&self, sigma: usize) -> &RatVector<Z> {
        &self.u_sigma[sigma]
    }

    pub fn all(&self) -> &[RatVector<Z>] {
        &self.u_sigma
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { u_sigma: self.u_sigma.iter().zip(&other.u_sigma).map(|(a, b)| a.add(b)).collect() }
    }
}

/// The divisor admits no linear data on this maximal cone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotQCartier {
    pub cone: usize,
}

impl From<NotQCartier> for Error {
    fn from(e: NotQCartier) -> Self {
        Error::NotQCartier { cone: e.cone }
    }
}

pub fn local_data<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<std::result::Result<LocalData<Z>, NotQCartier>> {
    d.check_len(fan)?;
    let n = fan.rank();
    let mut u_sigma = Vec::with_capacity(fan.cones().len());
    for (ci, mc) in fan.cones().iter().enumerate() {
        let rows: Vec<Vec<Ratio<Z>>> = mc
            .ray_indices
            .iter()
            .map(|&i| fan.rays()[i].coords().iter().cloned().map(rat).collect())
            .collect();
        let rhs: Vec<Ratio<Z>> = mc.ray_indices.iter().map(|&i| -d.coeffs[i].clone()).collect();
        match solve_exact(&rows, &rhs, n) {
            Solution::Unique(u) => u_sigma.push(RatVector::new(u, Ambient::M)),
            Solution::Inconsistent => return Ok(Err(NotQCartier { cone: ci })),
            Solution::Underdetermined(_) => {
                return Err(Error::Invariant(format!("maximal cone {ci} is not full-dimensional")))
            }
        }
    }
    Ok(Ok(LocalData { u_sigma }))
}

/// Local data, with non-ℚ-Cartier divisors reported as an error.
pub fn require_local_data<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<LocalData<Z>> {
    Ok(local_data(fan, d)??)
}

pub fn is_q_cartier<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<bool> {
    Ok(local_data(fan, d)?.is_ok())
}

/// Cartier iff every `u_σ` is a lattice point.
pub fn is_cartier<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<bool> {
    let ld = require_local_data(fan, d)?;
    Ok(ld.u_sigma.iter().all(RatVector::is_integral))
}

/// `P_D = { u : ⟨u, v_i⟩ ≥ -d_i }`.
pub fn polytope<Z: Int>(fan: &Fan<Z>, d: &TDivisor<Z>) -> Result<Polytope<Z>> {
    d.check_len(fan)?;
    let hs = fan
        .rays()
        .iter()
        .zip(&d.coeffs)
        .map(|(v, c)| Halfspace { normal: v.clone(), offset: c.clone() })
        .collect();
    Ok(Polytope::from_halfspaces(fan.rank(), hs))
}

/// `P_D^σ = P_D - u_σ`.
pub fn translated_polytope<Z: Int>(p: &Polytope<Z>, ld: &LocalData<Z>, sigma: usize) -> Polytope<Z> {
    p.translated(ld.u(sigma))
}

/// `K_X = -Σ D_i`.
pub fn canonical_divisor<Z: Int>(fan: &Fan<Z>) -> TDivisor<Z> {
    TDivisor::new(vec![-Ratio::<Z>::one(); fan.rays().len()])
}

/// `0 ≥ D' ≥ K_X` coefficientwise.
pub fn dprime_in_range<Z: Int>(fan: &Fan<Z>, dp: &TDivisor<Z>) -> Result<bool> {
    dp.check_len(fan)?;
    let lo = -Ratio::<Z>::one();
    Ok(dp.coeffs.iter().all(|c| *c <= Ratio::zero() && *c >= lo))
}
