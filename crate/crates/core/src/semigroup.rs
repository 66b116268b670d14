//! Lattice points of bounded polytopes, Hilbert bases of pointed cones, and
//! the semigroup generation test.

use std::collections::{BTreeSet, HashSet, VecDeque};

use num_rational::Ratio;
use num_traits::Zero;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{inverse, Ambient, LatticeVector};
use crate::polytope::Polytope;
use crate::scalar::{rat, Int};

/// Deduplicated, lexicographically sorted lattice points of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePointSet<Z> {
    points: Vec<LatticeVector<Z>>,
}

impl<Z: Int> LatticePointSet<Z> {
    pub fn new(points: impl IntoIterator<Item = LatticeVector<Z>>) -> Self {
        let set: BTreeSet<LatticeVector<Z>> = points.into_iter().collect();
        Self { points: set.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self { points: Vec::new() }
    }

    pub fn points(&self) -> &[LatticeVector<Z>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticeVector<Z>) -> bool {
        self.points.binary_search(p).is_ok()
    }
}

/// Integer points of a bounded polytope.
pub fn lattice_points<Z: Int>(p: &Polytope<Z>) -> Result<LatticePointSet<Z>> {
    if !p.is_bounded() {
        return Err(Error::Unbounded);
    }
    if p.is_empty() {
        return Ok(LatticePointSet::empty());
    }
    let n = p.rank();
    let lo: Vec<Z> = (0..n)
        .map(|i| p.vertices().iter().map(|v| v.coords()[i].ceil().to_integer()).min().expect("nonempty"))
        .collect();
    let hi: Vec<Z> = (0..n)
        .map(|i| p.vertices().iter().map(|v| v.coords()[i].floor().to_integer()).max().expect("nonempty"))
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    if (0..n).any(|i| lo[i] > hi[i]) {
        return Ok(LatticePointSet::empty());
    }
    loop {
        let r: Vec<Ratio<Z>> = cur.iter().cloned().map(rat).collect();
        if p.halfspaces().iter().all(|h| h.satisfied_by(&r)) {
            out.push(LatticeVector::new(cur.clone(), Ambient::M));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(LatticePointSet::new(out));
            }
            if cur[i] < hi[i] {
                cur[i] = cur[i].clone() + Z::one();
                break;
            }
            cur[i] = lo[i].clone();
            i += 1;
        }
    }
}

/// Splits a pointed cone into simplicial cones on its own rays by pulling
/// from the first ray.
fn triangulate<Z: Int>(c: &Cone<Z>) -> Result<Vec<Vec<LatticeVector<Z>>>> {
    let rays = c.rays();
    if rays.len() == c.dim() {
        return Ok(vec![rays.to_vec()]);
    }
    let apex = &rays[0];
    let mut out = Vec::new();
    for f in c.facets() {
        if crate::lattice::dot(f.coords(), apex.coords()).is_zero() {
            continue;
        }
        let face: Vec<LatticeVector<Z>> = rays
            .iter()
            .filter(|r| crate::lattice::dot(f.coords(), r.coords()).is_zero())
            .cloned()
            .collect();
        let sub = Cone::from_generators(&face, c.ambient(), c.rank())?;
        for mut simplex in triangulate(&sub)? {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    Ok(out)
}

/// Nonzero lattice points `Σ a_i w_i` with `0 ≤ a_i < 1`, by walking the group
/// `ℤ^n / Wℤ^n` from the images of the unit vectors.
fn parallelepiped_points<Z: Int>(w: &[LatticeVector<Z>]) -> Result<Vec<Vec<Z>>> {
    let n = w.len();
    // columns of W are the generators
    let mat: Vec<Vec<Z>> = (0..n).map(|i| w.iter().map(|g| g.coords()[i].clone()).collect()).collect();
    let inv = inverse(&mat).ok_or(Error::Degenerate(n))?;
    let frac = |v: Vec<Ratio<Z>>| -> Vec<Ratio<Z>> { v.into_iter().map(|x| x.clone() - x.floor()).collect() };
    let steps: Vec<Vec<Ratio<Z>>> = (0..n).map(|k| frac((0..n).map(|i| inv[i][k].clone()).collect())).collect();
    let zero = vec![Ratio::zero(); n];
    let mut seen: HashSet<Vec<Ratio<Z>>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    let mut out = Vec::new();
    while let Some(a) = queue.pop_front() {
        if a.iter().any(|x| !x.is_zero()) {
            let p: Vec<Z> = (0..n)
                .map(|i| {
                    let s = w.iter().zip(&a).fold(Ratio::zero(), |s, (g, c)| s + c * rat(g.coords()[i].clone()));
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect();
            out.push(p);
        }
        for s in &steps {
            let next = frac(a.iter().zip(s).map(|(x, y)| x + y).collect());
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Minimal generating set of `c ∩ M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertBasis<Z: Int> {
    pub cone: Cone<Z>,
    pub elements: LatticePointSet<Z>,
}

pub fn hilbert_basis<Z: Int>(c: &Cone<Z>) -> Result<HilbertBasis<Z>> {
    if !c.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let mut candidates: BTreeSet<Vec<Z>> = c.rays().iter().map(|r| r.coords().to_vec()).collect();
    for simplex in triangulate(c)? {
        candidates.extend(parallelepiped_points(&simplex)?);
    }
    let cands: Vec<Vec<Z>> = candidates.into_iter().collect();
    let irreducible = cands.iter().filter(|x| {
        !cands.iter().any(|y| {
            if y == *x {
                return false;
            }
            let diff: Vec<Z> = x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect();
            diff.iter().any(|d| !d.is_zero()) && c.contains_point(&diff)
        })
    });
    let elements = LatticePointSet::new(irreducible.map(|p| LatticeVector::new(p.clone(), c.ambient())));
    Ok(HilbertBasis { cone: c.clone(), elements })
}

/// Outcome of a generation test; `missing` is a Hilbert basis element absent
/// from the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generation<Z> {
    pub generates: bool,
    pub missing: Option<LatticeVector<Z>>,
}

/// Does `s` generate `c ∩ M`? Equivalent to containing the Hilbert basis.
pub fn generates<Z: Int>(s: &LatticePointSet<Z>, c: &Cone<Z>) -> Result<Generation<Z>> {
    for p in s.points() {
        if p.rank() != c.rank() || !c.contains_point(p.coords()) {
            return Err(Error::OutsideCone);
        }
    }
    let hb = hilbert_basis(c)?;
    Ok(generates_with(s, &hb))
}

pub(crate) fn generates_with<Z: Int>(s: &LatticePointSet<Z>, hb: &HilbertBasis<Z>) -> Generation<Z> {
    let missing = hb.elements.points().iter().find(|h| !s.contains(h)).cloned();
    Generation { generates: missing.is_none(), missing }
}

/// Is `target` a sum of at most `bound` elements of `s` (with repetition)?
pub fn semigroup_member<Z: Int>(s: &LatticePointSet<Z>, target: &LatticeVector<Z>, bound: usize) -> bool {
    let zero = vec![Z::zero(); target.rank()];
    if target.coords() == &zero[..] {
        return true;
    }
    let gens: Vec<&[Z]> = s.points().iter().map(|p| p.coords()).filter(|p| p.iter().any(|x| !x.is_zero())).collect();
    let mut frontier: HashSet<Vec<Z>> = HashSet::from([zero]);
    let mut seen = frontier.clone();
    for _ in 0..bound {
        let mut next = HashSet::new();
        for f in &frontier {
            for g in &gens {
                let sum: Vec<Z> = f.iter().zip(g.iter()).map(|(a, b)| a.clone() + b.clone()).collect();
                if sum == target.coords() {
                    return true;
                }
                if seen.insert(sum.clone()) {
                    next.insert(sum);
                }
            }
        }
        frontier = next;
    }
    false
}

/// Index of the sublattice spanned by `n` vectors in rank `n`.
pub fn index<Z: Int>(w: &[LatticeVector<Z>]) -> Z {
    let m: Vec<Vec<Z>> = w.iter().map(|g| g.coords().to_vec()).collect();
    crate::lattice::det(&m).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lambda::dilated_simplex;
    use crate::polytope::Halfspace;
    use num_bigint::BigInt;

    type C = Cone<BigInt>;

    fn lv(c: &[i64]) -> LatticeVector<BigInt> {
        LatticeVector::from_i64s(c, Ambient::M)
    }

    fn cone(gens: &[&[i64]]) -> C {
        let g: Vec<_> = gens.iter().map(|c| lv(c)).collect();
        Cone::from_generators(&g, Ambient::M, gens[0].len()).unwrap()
    }

    fn set(pts: &[&[i64]]) -> LatticePointSet<BigInt> {
        LatticePointSet::new(pts.iter().map(|p| lv(p)))
    }

    fn hs(normal: &[i64], offset: i64) -> Halfspace<BigInt> {
        Halfspace { normal: LatticeVector::from_i64s(normal, Ambient::N), offset: rat(BigInt::from(offset)) }
    }

    #[test]
    fn triangle_points() {
        let p = Polytope::from_halfspaces(2, vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], 3)]);
        assert_eq!(lattice_points(&p).unwrap().len(), 10);
        let e = Polytope::from_halfspaces(2, vec![hs(&[1, 0], 0), hs(&[0, 1], 0), hs(&[-1, -1], -1)]);
        assert!(lattice_points(&e).unwrap().is_empty());
        let open = Polytope::from_halfspaces(2, vec![hs(&[1, 0], 0), hs(&[0, 1], 0)]);
        assert_eq!(lattice_points(&open), Err(Error::Unbounded));
    }

    #[test]
    fn ew_simplex_points() {
        let ew = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let delta = dilated_simplex(&ew, &rat(BigInt::from(1))).unwrap();
        let pts = lattice_points(&delta).unwrap();
        assert_eq!(pts, set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]));
    }

    #[test]
    fn hilbert_examples() {
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(hilbert_basis(&oct).unwrap().elements, set(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        let c = cone(&[&[1, 0], &[1, 2]]);
        assert_eq!(hilbert_basis(&c).unwrap().elements, set(&[&[1, 0], &[1, 1], &[1, 2]]));
        let ew = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        assert_eq!(
            hilbert_basis(&ew).unwrap().elements,
            set(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2], &[1, 1, 1]])
        );
        let square = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(hilbert_basis(&square).unwrap().elements.len(), 4);
        let wide = cone(&[&[1, 0], &[1, 7]]);
        assert_eq!(hilbert_basis(&wide).unwrap().elements.len(), 8);
        let steep = cone(&[&[0, 1], &[3, -2]]);
        // index 3: the parallelepiped holds (1,0) and (2,-1)
        assert_eq!(hilbert_basis(&steep).unwrap().elements, set(&[&[0, 1], &[1, 0], &[2, -1], &[3, -2]]));
    }

    #[test]
    fn generation_examples() {
        let ew = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let delta = set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let g = generates(&delta, &ew).unwrap();
        assert!(!g.generates);
        assert_eq!(g.missing, Some(lv(&[1, 1, 1])));
        let oct = cone(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert!(generates(&set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), &oct).unwrap().generates);
        assert_eq!(generates(&set(&[&[-1, 0, 0]]), &oct), Err(Error::OutsideCone));
    }

    #[test]
    fn membership_examples() {
        let s = set(&[&[1, 0], &[1, 1], &[1, 2]]);
        assert!(semigroup_member(&s, &lv(&[3, 3]), 5));
        assert!(!semigroup_member(&s, &lv(&[3, 3]), 2));
        let delta = set(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        assert!(!semigroup_member(&delta, &lv(&[1, 1, 1]), 12));
        assert!(semigroup_member(&LatticePointSet::empty(), &lv(&[0, 0]), 0));
    }

    #[test]
    fn removing_any_element_breaks_generation() {
        let ew = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let hb = hilbert_basis(&ew).unwrap();
        for skip in hb.elements.points() {
            let s = LatticePointSet::new(hb.elements.points().iter().filter(|p| *p != skip).cloned());
            assert!(!generates(&s, &ew).unwrap().generates);
        }
    }

    #[test]
    fn triangulation_covers_square_cone() {
        let square = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let t = triangulate(&square).unwrap();
        assert_eq!(t.len(), 2);
        let total: BigInt = t.iter().map(|s| index(s)).sum();
        assert_eq!(total, BigInt::from(2));
    }
}
