//! Pointed rational polyhedral cones, stored with both their extreme rays and
//! their inner facet normals.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{
    det, dot, dot_rat, int_kernel_basis, int_rank, normal_vector, primitive_coords, Ambient,
    LatticeVector, RatVector,
};
use crate::lp;
use crate::scalar::{rat, Int};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone<Z> {
    ambient: Ambient,
    rank: usize,
    dim: usize,
    rays: Vec<LatticeVector<Z>>,
    facets: Vec<LatticeVector<Z>>,
    /// Primitive basis of the annihilator of the linear span (empty when
    /// full-dimensional).
    equations: Vec<LatticeVector<Z>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeClass {
    pub simplicial: bool,
    pub regular: bool,
}

impl<Z: Int> Cone<Z> {
    /// Cone spanned by `gens`. Redundant generators are dropped; the result
    /// need not be full-dimensional.
    pub fn from_generators(gens: &[LatticeVector<Z>], ambient: Ambient, rank: usize) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Invalid("a cone needs at least one generator".into()));
        }
        let mut prim: BTreeSet<Vec<Z>> = BTreeSet::new();
        for g in gens {
            if g.ambient() != ambient {
                return Err(Error::AmbientMismatch { expected: ambient, found: g.ambient() });
            }
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
            prim.insert(primitive_coords(g.coords()).ok_or(Error::ZeroVector)?);
        }
        let gens: Vec<Vec<Z>> = prim.into_iter().collect();
        if !is_pointed(&gens, rank) {
            return Err(Error::NotPointed);
        }
        let refs: Vec<&[Z]> = gens.iter().map(|g| &g[..]).collect();
        let dim = int_rank(&refs, rank);
        let equations = int_kernel_basis(&refs, rank);

        let mut facets: BTreeSet<Vec<Z>> = BTreeSet::new();
        for subset in (0..gens.len()).combinations(dim - 1) {
            let mut span: Vec<&[Z]> = subset.iter().map(|&i| &gens[i][..]).collect();
            span.extend(equations.iter().map(|e| &e[..]));
            let normal = normal_vector(&span, rank);
            let Some(normal) = primitive_coords(&normal) else {
                continue;
            };
            let signs: Vec<Z> = gens.iter().map(|g| dot(&normal, g).signum()).collect();
            if signs.iter().all(|s| !s.is_negative()) {
                facets.insert(normal);
            } else if signs.iter().all(|s| !s.is_positive()) {
                facets.insert(normal.iter().map(|x| -x.clone()).collect());
            }
        }

        let rays: Vec<Vec<Z>> = gens
            .iter()
            .filter(|g| {
                let tight: Vec<&[Z]> =
                    facets.iter().filter(|f| dot(f, g).is_zero()).map(|f| &f[..]).collect();
                int_rank(&tight, rank) == dim - 1
            })
            .cloned()
            .collect();

        let wrap = |v: Vec<Z>, a| LatticeVector::new(v, a);
        Ok(Self {
            ambient,
            rank,
            dim,
            rays: rays.into_iter().map(|r| wrap(r, ambient)).collect(),
            facets: facets.into_iter().map(|f| wrap(f, ambient.dual())).collect(),
            equations: equations.into_iter().map(|e| wrap(e, ambient.dual())).collect(),
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dim == self.rank
    }

    /// Primitive extreme ray generators, lexicographically ordered.
    pub fn rays(&self) -> &[LatticeVector<Z>] {
        &self.rays
    }

    /// Primitive inner facet normals (in the dual ambient), lexicographically
    /// ordered.
    pub fn facets(&self) -> &[LatticeVector<Z>] {
        &self.facets
    }

    pub fn equations(&self) -> &[LatticeVector<Z>] {
        &self.equations
    }

    /// The dual cone, computed afresh from the facet normals.
    pub fn dual(&self) -> Result<Self> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        Self::from_generators(&self.facets, self.ambient.dual(), self.rank)
    }

    pub fn contains(&self, x: &RatVector<Z>, strict: bool) -> Result<bool> {
        if x.ambient() != self.ambient {
            return Err(Error::AmbientMismatch { expected: self.ambient, found: x.ambient() });
        }
        if x.rank() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: x.rank() });
        }
        if strict && !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        if self.equations.iter().any(|e| !dot_rat(x.coords(), e.coords()).is_zero()) {
            return Ok(false);
        }
        Ok(self.facets.iter().all(|f| {
            let v = dot_rat(x.coords(), f.coords());
            if strict {
                v.is_positive()
            } else {
                !v.is_negative()
            }
        }))
    }

    /// Membership of a lattice point given by raw coordinates.
    pub(crate) fn contains_point(&self, x: &[Z]) -> bool {
        self.equations.iter().all(|e| dot(x, e.coords()).is_zero())
            && self.facets.iter().all(|f| !dot(x, f.coords()).is_negative())
    }

    pub(crate) fn contains_interior_point(&self, x: &[Z]) -> bool {
        self.is_full_dimensional() && self.facets.iter().all(|f| dot(x, f.coords()).is_positive())
    }

    pub fn classify(&self) -> ConeClass {
        let simplicial = self.rays.len() == self.dim;
        let regular = simplicial && {
            // rays extend to a lattice basis iff their maximal minors are coprime
            let mut g = Z::zero();
            for cols in (0..self.rank).combinations(self.dim) {
                let m: Vec<Vec<Z>> = self
                    .rays
                    .iter()
                    .map(|r| cols.iter().map(|&c| r.coords()[c].clone()).collect())
                    .collect();
                g = num_integer::Integer::gcd(&g, &det(&m));
            }
            g.is_one()
        };
        ConeClass { simplicial, regular }
    }

    /// Absolute determinant of the ray matrix of a full-dimensional simplicial
    /// cone (its multiplicity).
    pub fn multiplicity(&self) -> Option<Z> {
        if !self.is_full_dimensional() || self.rays.len() != self.rank {
            return None;
        }
        let m: Vec<Vec<Z>> = self.rays.iter().map(|r| r.coords().to_vec()).collect();
        Some(det(&m).abs())
    }

    /// Writes `x` as a nonnegative combination of the rays, if possible.
    pub fn ray_combination(&self, x: &RatVector<Z>) -> Option<Vec<Ratio<Z>>> {
        let a: Vec<Vec<Ratio<Z>>> = (0..self.rank)
            .map(|i| self.rays.iter().map(|r| rat(r.coords()[i].clone())).collect())
            .collect();
        lp::feasible_point(&a, x.coords(), self.rays.len())
    }
}

/// No nontrivial nonnegative combination of the generators vanishes.
fn is_pointed<Z: Int>(gens: &[Vec<Z>], rank: usize) -> bool {
    let mut a: Vec<Vec<Ratio<Z>>> = (0..rank)
        .map(|i| gens.iter().map(|g| rat(g[i].clone())).collect())
        .collect();
    a.push(vec![Ratio::one(); gens.len()]);
    let mut b = vec![Ratio::zero(); rank];
    b.push(Ratio::one());
    lp::feasible_point(&a, &b, gens.len()).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn lv(c: &[i64], a: Ambient) -> LatticeVector<BigInt> {
        LatticeVector::from_i64s(c, a)
    }

    fn cone(gens: &[&[i64]], a: Ambient) -> Result<Cone<BigInt>> {
        let g: Vec<_> = gens.iter().map(|c| lv(c, a)).collect();
        Cone::from_generators(&g, a, gens[0].len())
    }

    fn rays(c: &Cone<BigInt>) -> Vec<Vec<i64>> {
        c.rays()
            .iter()
            .map(|r| r.coords().iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn redundant_generator_dropped() {
        let c = cone(&[&[1, 0], &[0, 1], &[1, 1]], Ambient::N).unwrap();
        assert_eq!(rays(&c), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn ewald_wessels_cone_keeps_all_rays() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]], Ambient::M).unwrap();
        assert_eq!(rays(&c), vec![vec![0, 1, 0], vec![1, 0, 0], vec![1, 1, 2]]);
        let class = c.classify();
        assert!(class.simplicial && !class.regular);
        assert_eq!(c.multiplicity(), Some(BigInt::from(2)));
    }

    #[test]
    fn line_is_not_pointed() {
        assert_eq!(cone(&[&[1, 0], &[-1, 0]], Ambient::N), Err(Error::NotPointed));
        assert_eq!(cone(&[&[0, 0], &[1, 0]], Ambient::N), Err(Error::ZeroVector));
    }

    #[test]
    fn dual_examples() {
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], Ambient::N).unwrap();
        let d = oct.dual().unwrap();
        assert_eq!(d.ambient(), Ambient::M);
        assert_eq!(rays(&d), rays(&oct));

        let c = cone(&[&[1, 0], &[1, 2]], Ambient::N).unwrap();
        let d = c.dual().unwrap();
        assert_eq!(rays(&d), vec![vec![0, 1], vec![2, -1]]);
        for u in d.rays() {
            for v in c.rays() {
                assert!(!dot(u.coords(), v.coords()).is_negative());
            }
        }
    }

    #[test]
    fn membership_examples() {
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], Ambient::M).unwrap();
        let p = |c: &[i64]| lv(c, Ambient::M).to_rat();
        assert!(oct.contains(&p(&[1, 1, 1]), true).unwrap());
        assert!(!oct.contains(&p(&[1, 0, 1]), true).unwrap());
        assert!(oct.contains(&p(&[1, 0, 1]), false).unwrap());
        let ew = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]], Ambient::M).unwrap();
        assert!(ew.contains(&p(&[1, 1, 1]), true).unwrap());
    }

    #[test]
    fn classify_examples() {
        let c = cone(&[&[1, 0], &[0, 1]], Ambient::N).unwrap();
        assert_eq!(c.classify(), ConeClass { simplicial: true, regular: true });
        let c = cone(&[&[1, 1], &[0, -1]], Ambient::N).unwrap();
        assert_eq!(c.classify(), ConeClass { simplicial: true, regular: true });
        let sq = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]], Ambient::N).unwrap();
        assert_eq!(sq.classify(), ConeClass { simplicial: false, regular: false });
    }

    #[test]
    fn lower_dimensional_cone() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]], Ambient::N).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(rays(&c), vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(c.equations().len(), 1);
        let p = |x: &[i64]| lv(x, Ambient::N).to_rat();
        assert!(c.contains(&p(&[2, 3, 0]), false).unwrap());
        assert!(!c.contains(&p(&[2, 3, 1]), false).unwrap());
        assert!(!c.contains(&p(&[-1, 3, 0]), false).unwrap());
        assert_eq!(c.contains(&p(&[1, 1, 0]), true), Err(Error::NotFullDimensional));
        assert!(c.classify().regular);
        assert_eq!(c.dual(), Err(Error::NotFullDimensional));
    }

    #[test]
    fn rays_satisfy_facets_and_sit_on_the_boundary() {
        let c = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[2, 1, -1]], Ambient::M).unwrap();
        assert_eq!(c.rays().len(), 4);
        for r in c.rays() {
            assert!(c.contains(&r.to_rat(), false).unwrap());
            assert!(!c.contains(&r.to_rat(), true).unwrap());
        }
    }
}
