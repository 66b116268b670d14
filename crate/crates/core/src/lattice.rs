//! Integer and rational vectors, the N/M pairing, and exact linear solving.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{rat, Field, Int};

/// Which side of the duality a vector lives on: `N` holds fan rays, `M`
/// holds characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Ambient {
    N,
    M,
}

impl Ambient {
    pub fn dual(self) -> Self {
        match self {
            Ambient::N => Ambient::M,
            Ambient::M => Ambient::N,
        }
    }
}

/// A point of `N` or `M`. Ordering is lexicographic on coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector<Z> {
    coords: Vec<Z>,
    ambient: Ambient,
}

impl<Z: Int> LatticeVector<Z> {
    pub fn new(coords: Vec<Z>, ambient: Ambient) -> Self {
        Self { coords, ambient }
    }

    pub fn from_i64s(coords: &[i64], ambient: Ambient) -> Self {
        Self::new(coords.iter().map(|&c| Z::of(c)).collect(), ambient)
    }

    pub fn zero(rank: usize, ambient: Ambient) -> Self {
        Self::new(vec![Z::zero(); rank], ambient)
    }

    pub fn coords(&self) -> &[Z] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Z> {
        self.coords
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_rat(&self) -> RatVector<Z> {
        RatVector::new(self.coords.iter().cloned().map(rat).collect(), self.ambient)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() + b.clone()).collect(),
            self.ambient,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a.clone() - b.clone()).collect(),
            self.ambient,
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a.clone()).collect(), self.ambient)
    }

    pub fn scale(&self, k: &Z) -> Self {
        Self::new(self.coords.iter().map(|a| a.clone() * k.clone()).collect(), self.ambient)
    }
}

/// A point of `N ⊗ ℚ` or `M ⊗ ℚ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatVector<Z: Clone + Integer> {
    coords: Vec<Ratio<Z>>,
    ambient: Ambient,
}

impl<Z: Int> RatVector<Z> {
    pub fn new(coords: Vec<Ratio<Z>>, ambient: Ambient) -> Self {
        Self { coords, ambient }
    }

    pub fn zero(rank: usize, ambient: Ambient) -> Self {
        Self::new(vec![Ratio::zero(); rank], ambient)
    }

    pub fn from_ratios(coords: &[(i64, i64)], ambient: Ambient) -> Self {
        Self::new(coords.iter().map(|&(n, d)| Ratio::new(Z::of(n), Z::of(d))).collect(), ambient)
    }

    pub fn coords(&self) -> &[Ratio<Z>] {
        &self.coords
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Ratio::is_integer)
    }

    pub fn to_lattice(&self) -> Option<LatticeVector<Z>> {
        if !self.is_integral() {
            return None;
        }
        Some(LatticeVector::new(self.coords.iter().map(Ratio::to_integer).collect(), self.ambient))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
            self.ambient,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
            self.ambient,
        )
    }

    pub fn scale(&self, k: &Ratio<Z>) -> Self {
        Self::new(self.coords.iter().map(|a| a * k).collect(), self.ambient)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a.clone()).collect(), self.ambient)
    }
}

fn check_pairing(left: (Ambient, usize), right: (Ambient, usize)) -> Result<()> {
    if left.1 != right.1 {
        return Err(Error::RankMismatch { expected: left.1, found: right.1 });
    }
    if left.0 == right.0 {
        return Err(Error::AmbientMismatch { expected: left.0.dual(), found: right.0 });
    }
    Ok(())
}

/// The duality pairing `⟨u, v⟩` between a rational point and a lattice point
/// on opposite sides.
pub fn pair<Z: Int>(u: &RatVector<Z>, v: &LatticeVector<Z>) -> Result<Ratio<Z>> {
    check_pairing((u.ambient, u.rank()), (v.ambient, v.rank()))?;
    Ok(dot_rat(&u.coords, &v.coords))
}

pub fn pair_lattice<Z: Int>(u: &LatticeVector<Z>, v: &LatticeVector<Z>) -> Result<Z> {
    check_pairing((u.ambient, u.rank()), (v.ambient, v.rank()))?;
    Ok(dot(&u.coords, &v.coords))
}

pub(crate) fn dot<Z: Int>(a: &[Z], b: &[Z]) -> Z {
    a.iter().zip(b).fold(Z::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub(crate) fn dot_rat<Z: Int>(a: &[Ratio<Z>], b: &[Z]) -> Ratio<Z> {
    let mut acc = Ratio::zero();
    for (x, y) in a.iter().zip(b) {
        if !y.is_zero() && !x.is_zero() {
            acc = acc + x * y.clone();
        }
    }
    acc
}

pub(crate) fn gcd_all<Z: Int>(v: &[Z]) -> Z {
    v.iter().fold(Z::zero(), |g, x| g.gcd(x))
}

pub(crate) fn primitive_coords<Z: Int>(v: &[Z]) -> Option<Vec<Z>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x.clone() / g.clone()).collect())
}

/// Divides out the gcd of the coordinates, keeping the direction.
pub fn primitivize<Z: Int>(v: &LatticeVector<Z>) -> Result<LatticeVector<Z>> {
    primitive_coords(&v.coords)
        .map(|c| LatticeVector::new(c, v.ambient))
        .ok_or(Error::ZeroVector)
}

/// Smallest positive integer multiple of a rational vector, made primitive.
pub(crate) fn primitive_direction<Z: Int>(v: &[Ratio<Z>]) -> Option<Vec<Z>> {
    let l = v.iter().fold(Z::one(), |l, x| l.lcm(x.denom()));
    let scaled: Vec<Z> = v.iter().map(|x| (x * rat(l.clone())).to_integer()).collect();
    primitive_coords(&scaled)
}

/// Outcome of [`solve_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    /// Consistent with a positive-dimensional solution set; carries the
    /// particular solution with every free variable set to zero.
    Underdetermined(Vec<F>),
    Inconsistent,
}

impl<F> Solution<F> {
    pub fn unique(self) -> Option<Vec<F>> {
        match self {
            Solution::Unique(v) => Some(v),
            _ => None,
        }
    }
}

/// Brings `m` to reduced row echelon form in place and returns the pivot
/// columns. Pivots are the first nonzero entry in each column.
pub(crate) fn row_reduce<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = F::one() / m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let delta = f.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination.
pub fn solve_exact<F: Field>(rows: &[Vec<F>], rhs: &[F], ncols: usize) -> Solution<F> {
    assert_eq!(rows.len(), rhs.len(), "one right-hand side per row");
    let mut aug: Vec<Vec<F>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            debug_assert_eq!(r.len(), ncols);
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return Solution::Inconsistent;
    }
    let mut x = vec![F::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][ncols].clone();
    }
    #[cfg(test)]
    for (r, b) in rows.iter().zip(rhs) {
        let lhs = r.iter().zip(&x).fold(F::zero(), |acc, (a, v)| acc + a.clone() * v.clone());
        assert_eq!(&lhs, b, "re-substitution failed");
    }
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Underdetermined(x)
    }
}

pub(crate) fn rank_of<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m, ncols).len()
}

pub(crate) fn int_rank<Z: Int>(rows: &[&[Z]], ncols: usize) -> usize {
    let m: Vec<Vec<Ratio<Z>>> =
        rows.iter().map(|r| r.iter().cloned().map(rat).collect()).collect();
    rank_of(&m, ncols)
}

/// Basis of `{x : A x = 0}`.
pub(crate) fn kernel_basis<F: Field>(rows: &[Vec<F>], ncols: usize) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = row_reduce(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); ncols];
            x[f] = F::one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -m[r][f].clone();
            }
            x
        })
        .collect()
}

/// Integer basis (each vector primitive) of the annihilator of the rows.
pub(crate) fn int_kernel_basis<Z: Int>(rows: &[&[Z]], ncols: usize) -> Vec<Vec<Z>> {
    let m: Vec<Vec<Ratio<Z>>> =
        rows.iter().map(|r| r.iter().cloned().map(rat).collect()).collect();
    kernel_basis(&m, ncols)
        .iter()
        .map(|v| primitive_direction(v).expect("kernel vectors are nonzero"))
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn det<Z: Int>(m: &[Vec<Z>]) -> Z {
    let n = m.len();
    if n == 0 {
        return Z::one();
    }
    let mut a: Vec<Vec<Z>> = m.to_vec();
    let mut sign = Z::one();
    let mut prev = Z::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Z::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// A vector orthogonal to each of the `n - 1` given vectors of length `n`,
/// built from signed maximal minors. Zero iff the inputs are dependent.
pub(crate) fn normal_vector<Z: Int>(vs: &[&[Z]], n: usize) -> Vec<Z> {
    debug_assert_eq!(vs.len() + 1, n);
    (0..n)
        .map(|i| {
            let minor: Vec<Vec<Z>> = vs
                .iter()
                .map(|v| v.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det(&minor);
            if i % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Rational inverse of a square integer matrix, or `None` when singular.
pub(crate) fn inverse<Z: Int>(m: &[Vec<Z>]) -> Option<Vec<Vec<Ratio<Z>>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Ratio<Z>>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<Ratio<Z>> = r.iter().cloned().map(rat).collect();
            row.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            row
        })
        .collect();
    let pivots = row_reduce(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type Q = Ratio<BigInt>;

    fn lv(c: &[i64], a: Ambient) -> LatticeVector<BigInt> {
        LatticeVector::from_i64s(c, a)
    }

    fn q(n: i64) -> Q {
        rat(BigInt::from(n))
    }

    #[test]
    fn primitivize_examples() {
        assert_eq!(primitivize(&lv(&[2, 4, 6], Ambient::N)).unwrap(), lv(&[1, 2, 3], Ambient::N));
        assert_eq!(primitivize(&lv(&[0, -3], Ambient::N)).unwrap(), lv(&[0, -1], Ambient::N));
        assert_eq!(primitivize(&lv(&[7, 0, 0, 0], Ambient::M)).unwrap(), lv(&[1, 0, 0, 0], Ambient::M));
        assert_eq!(primitivize(&lv(&[0, 0], Ambient::N)), Err(Error::ZeroVector));
    }

    #[test]
    fn pairing_examples() {
        let p = |u: &[i64], v: &[i64]| pair_lattice(&lv(u, Ambient::M), &lv(v, Ambient::N)).unwrap();
        assert_eq!(p(&[1, 0], &[0, 1]), BigInt::from(0));
        assert_eq!(p(&[2, -1], &[1, 2]), BigInt::from(0));
        assert_eq!(p(&[1, 1, 1], &[1, 1, 2]), BigInt::from(4));
    }

    #[test]
    fn pairing_rejects_mismatches() {
        let u = lv(&[1, 0], Ambient::M);
        assert!(matches!(
            pair_lattice(&u, &lv(&[1, 0, 0], Ambient::N)),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            pair_lattice(&u, &lv(&[1, 0], Ambient::M)),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn solve_examples() {
        let id = vec![vec![q(1), q(0)], vec![q(0), q(1)]];
        assert_eq!(solve_exact(&id, &[q(3), q(5)], 2), Solution::Unique(vec![q(3), q(5)]));
        let dup = vec![vec![q(1), q(0)], vec![q(1), q(0)]];
        assert_eq!(solve_exact(&dup, &[q(1), q(2)], 2), Solution::Inconsistent);
        let under = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        assert!(matches!(solve_exact(&under, &[q(1), q(1)], 3), Solution::Underdetermined(_)));
    }

    #[test]
    fn determinant_and_normal() {
        let m = vec![
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
        ];
        assert_eq!(det(&m), BigInt::from(2));
        let swapped = vec![m[1].clone(), m[0].clone(), m[2].clone()];
        assert_eq!(det(&swapped), BigInt::from(-2));
        let n = normal_vector(&[&m[0][..], &m[2][..]], 3);
        assert_eq!(dot(&n, &m[0]), BigInt::from(0));
        assert_eq!(dot(&n, &m[2]), BigInt::from(0));
        assert!(n.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn kernel_is_annihilator() {
        let rows = [vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]];
        let refs: Vec<&[BigInt]> = rows.iter().map(|r| &r[..]).collect();
        let k = int_kernel_basis(&refs, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(dot(v, &rows[0]), BigInt::from(0));
        }
    }

    fn small_vec(n: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-20i64..=20, n)
    }

    proptest! {
        #[test]
        fn primitivize_is_idempotent(v in small_vec(3)) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let p = primitivize(&lv(&v, Ambient::N)).unwrap();
            prop_assert_eq!(primitivize(&p).unwrap(), p.clone());
            prop_assert_eq!(gcd_all(p.coords()), BigInt::from(1));
        }

        #[test]
        fn pairing_is_bilinear(a in small_vec(3), b in small_vec(3), v in small_vec(3)) {
            let ua = lv(&a, Ambient::M).to_rat();
            let ub = lv(&b, Ambient::M).to_rat();
            let vv = lv(&v, Ambient::N);
            let lhs = pair(&ua.add(&ub), &vv).unwrap();
            prop_assert_eq!(lhs, pair(&ua, &vv).unwrap() + pair(&ub, &vv).unwrap());
        }

        #[test]
        fn unique_solutions_resubstitute(m in proptest::collection::vec(small_vec(3), 3), b in small_vec(3)) {
            let rows: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let rhs: Vec<Q> = b.iter().map(|&x| q(x)).collect();
            if let Solution::Unique(x) = solve_exact(&rows, &rhs, 3) {
                for (r, bi) in rows.iter().zip(&rhs) {
                    let lhs = r.iter().zip(&x).fold(Q::zero(), |acc, (a, v)| acc + a * v);
                    prop_assert_eq!(&lhs, bi);
                }
            }
        }
    }
}
