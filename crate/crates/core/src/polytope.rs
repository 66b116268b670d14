//! Rational polytopes in `M ⊗ ℚ` given by inequalities `⟨u, v⟩ ≥ -offset`
//! with integer normals `v ∈ N`, plus facet computation for lattice polytopes
//! given by points.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::lattice::{
    dot, dot_rat, int_rank, normal_vector, primitive_coords, solve_exact, Ambient, LatticeVector,
    RatVector, Solution,
};
use crate::lp;
use crate::scalar::{rat, Int};

/// `⟨u, normal⟩ ≥ -offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Halfspace<Z: Int> {
    pub normal: LatticeVector<Z>,
    pub offset: Ratio<Z>,
}

impl<Z: Int> Halfspace<Z> {
    pub fn satisfied_by(&self, u: &[Ratio<Z>]) -> bool {
        dot_rat(u, self.normal.coords()) >= -self.offset.clone()
    }

    pub fn slack(&self, u: &[Ratio<Z>]) -> Ratio<Z> {
        dot_rat(u, self.normal.coords()) + self.offset.clone()
    }
}

/// A possibly empty polytope, kept in both H- and V-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope<Z: Int> {
    rank: usize,
    halfspaces: Vec<Halfspace<Z>>,
    vertices: Vec<RatVector<Z>>,
}

impl<Z: Int> Polytope<Z> {
    /// Builds the polytope and enumerates its vertices by solving every
    /// rank-sized subsystem of tight inequalities.
    pub fn from_halfspaces(rank: usize, halfspaces: Vec<Halfspace<Z>>) -> Self {
        let mut vertices = BTreeSet::new();
        for subset in (0..halfspaces.len()).combinations(rank) {
            let rows: Vec<Vec<Ratio<Z>>> = subset
                .iter()
                .map(|&i| halfspaces[i].normal.coords().iter().cloned().map(rat).collect())
                .collect();
            let rhs: Vec<Ratio<Z>> = subset.iter().map(|&i| -halfspaces[i].offset.clone()).collect();
            if let Solution::Unique(x) = solve_exact(&rows, &rhs, rank) {
                if halfspaces.iter().all(|h| h.satisfied_by(&x)) {
                    vertices.insert(RatVector::new(x, Ambient::M));
                }
            }
        }
        Self { rank, halfspaces, vertices: vertices.into_iter().collect() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn halfspaces(&self) -> &[Halfspace<Z>] {
        &self.halfspaces
    }

    /// Vertices in lexicographic order; empty iff the polytope is empty
    /// (for bounded polytopes).
    pub fn vertices(&self) -> &[RatVector<Z>] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, u: &RatVector<Z>) -> bool {
        self.halfspaces.iter().all(|h| h.satisfied_by(u.coords()))
    }

    /// The recession cone `{x : ⟨x, v⟩ ≥ 0 for all normals}` is trivial.
    pub fn is_bounded(&self) -> bool {
        // look for x = x⁺ - x⁻ with A x = s ≥ 0 and Σ s = 1
        let n = self.rank;
        let h = self.halfspaces.len();
        let cols = 2 * n + h;
        let mut a: Vec<Vec<Ratio<Z>>> = Vec::with_capacity(h + 1);
        for (k, hs) in self.halfspaces.iter().enumerate() {
            let mut row = vec![Ratio::zero(); cols];
            for (i, c) in hs.normal.coords().iter().enumerate() {
                row[i] = rat(c.clone());
                row[n + i] = -rat(c.clone());
            }
            row[2 * n + k] = -Ratio::one();
            a.push(row);
        }
        let mut last = vec![Ratio::zero(); cols];
        for item in last.iter_mut().skip(2 * n) {
            *item = Ratio::one();
        }
        a.push(last);
        let mut b = vec![Ratio::zero(); h];
        b.push(Ratio::one());
        lp::feasible_point(&a, &b, cols).is_none()
    }

    /// Translate by `-shift`.
    pub fn translated(&self, shift: &RatVector<Z>) -> Self {
        let halfspaces = self
            .halfspaces
            .iter()
            .map(|h| Halfspace {
                normal: h.normal.clone(),
                offset: h.offset.clone() + dot_rat(shift.coords(), h.normal.coords()),
            })
            .collect();
        let vertices = self.vertices.iter().map(|v| v.sub(shift)).collect();
        Self { rank: self.rank, halfspaces, vertices }
    }
}

/// A facet of a full-dimensional lattice polytope: `⟨u, normal⟩ ≥ -offset`
/// with primitive inner `normal`, tight on `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeFacet<Z> {
    pub normal: Vec<Z>,
    pub offset: Z,
    pub points: Vec<usize>,
}

/// Facets of `conv(points)`, or `None` if the hull is not full-dimensional.
pub fn lattice_hull_facets<Z: Int>(points: &[Vec<Z>], rank: usize) -> Option<Vec<LatticeFacet<Z>>> {
    let base = points.first()?;
    let diffs: Vec<Vec<Z>> = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    let refs: Vec<&[Z]> = diffs.iter().map(|d| &d[..]).collect();
    if int_rank(&refs, rank) < rank {
        return None;
    }
    let mut found: BTreeSet<(Vec<Z>, Z)> = BTreeSet::new();
    for subset in (0..points.len()).combinations(rank) {
        let p0 = &points[subset[0]];
        let d: Vec<Vec<Z>> = subset[1..]
            .iter()
            .map(|&i| points[i].iter().zip(p0).map(|(a, b)| a.clone() - b.clone()).collect())
            .collect();
        let dr: Vec<&[Z]> = d.iter().map(|x| &x[..]).collect();
        let Some(normal) = primitive_coords(&normal_vector(&dr, rank)) else {
            continue;
        };
        let level = dot(&normal, p0);
        let signs: Vec<Z> = points.iter().map(|p| (dot(&normal, p) - level.clone()).signum()).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            found.insert((normal, -level));
        } else if signs.iter().all(|s| !s.is_positive()) {
            found.insert((normal.iter().map(|x| -x.clone()).collect(), level));
        }
    }
    Some(
        found
            .into_iter()
            .map(|(normal, offset)| {
                let tight = points
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| (dot(&normal, p) + offset.clone()).is_zero())
                    .map(|(i, _)| i)
                    .collect();
                LatticeFacet { normal, offset, points: tight }
            })
            .collect(),
    )
}

/// Indices of the points that are vertices of their convex hull, given its
/// facets.
pub fn hull_vertices<Z: Int>(points: &[Vec<Z>], facets: &[LatticeFacet<Z>], rank: usize) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    (0..points.len())
        .filter(|&i| {
            let tight: Vec<&[Z]> =
                facets.iter().filter(|f| f.points.contains(&i)).map(|f| &f.normal[..]).collect();
            int_rank(&tight, rank) == rank && seen.insert(points[i].clone())
        })
        .collect()
}
