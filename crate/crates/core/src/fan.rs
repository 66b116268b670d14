//! Complete fans, their walls, and normal fans of lattice polytopes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::lattice::{dot, int_rank, primitive_coords, Ambient, LatticeVector};
use crate::lp;
use crate::polytope::{hull_vertices, lattice_hull_facets};
use crate::scalar::{rat, Int};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCone<Z> {
    /// Indices into the fan's global ray list, ascending.
    pub ray_indices: Vec<usize>,
    pub cone: Cone<Z>,
}

/// A codimension-one cone `σ ∩ τ` seen from `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wall<Z> {
    pub sigma: usize,
    pub tau: usize,
    pub wall_rays: Vec<usize>,
    /// Primitive generator of the ray of `σ^∨` perpendicular to the wall.
    pub u: LatticeVector<Z>,
    /// The distinguished ray of `τ` outside `σ` (first of `candidates`).
    pub v_j: usize,
    /// Every ray of `τ` not in `σ`.
    pub candidates: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan<Z> {
    rank: usize,
    rays: Vec<LatticeVector<Z>>,
    cones: Vec<MaxCone<Z>>,
    walls: Vec<Wall<Z>>,
}

impl<Z: Int> Fan<Z> {
    /// Validates and builds a complete fan from its maximal cones.
    pub fn build(max_cones: &[Vec<usize>], rays: Vec<LatticeVector<Z>>, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::Invalid("rank must be positive".into()));
        }
        let mut prim_rays = Vec::with_capacity(rays.len());
        let mut seen = BTreeSet::new();
        for (i, r) in rays.iter().enumerate() {
            if r.ambient() != Ambient::N {
                return Err(Error::AmbientMismatch { expected: Ambient::N, found: r.ambient() });
            }
            if r.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: r.rank() });
            }
            let p = primitive_coords(r.coords()).ok_or(Error::ZeroVector)?;
            if !seen.insert(p.clone()) {
                return Err(Error::NotAFan(format!("ray {i} repeats an earlier ray direction")));
            }
            prim_rays.push(LatticeVector::new(p, Ambient::N));
        }
        if max_cones.is_empty() {
            return Err(Error::NotComplete("no maximal cones".into()));
        }

        let mut cones = Vec::with_capacity(max_cones.len());
        let mut used = vec![false; prim_rays.len()];
        let mut seen_sets = BTreeSet::new();
        for (ci, idx) in max_cones.iter().enumerate() {
            let idx: Vec<usize> = idx.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            if idx.is_empty() {
                return Err(Error::Invalid(format!("cone {ci} has no rays")));
            }
            if let Some(&bad) = idx.iter().find(|&&i| i >= prim_rays.len()) {
                return Err(Error::Invalid(format!("cone {ci} references missing ray {bad}")));
            }
            if !seen_sets.insert(idx.clone()) {
                return Err(Error::NotAFan(format!("cone {ci} is listed twice")));
            }
            let gens: Vec<LatticeVector<Z>> = idx.iter().map(|&i| prim_rays[i].clone()).collect();
            let cone = Cone::from_generators(&gens, Ambient::N, rank)?;
            if !cone.is_full_dimensional() {
                return Err(Error::NotFullDimensional);
            }
            if cone.rays().len() != idx.len() {
                return Err(Error::NotAFan(format!("cone {ci} lists a ray that is not extreme")));
            }
            for &i in &idx {
                used[i] = true;
            }
            cones.push(MaxCone { ray_indices: idx, cone });
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::Invalid(format!("ray {i} belongs to no cone")));
        }

        for a in 0..cones.len() {
            for b in a + 1..cones.len() {
                check_meet(&cones[a], &cones[b], &prim_rays, rank)
                    .map_err(|msg| Error::NotAFan(format!("cones {a} and {b}: {msg}")))?;
            }
        }

        // facet -> (cone, facet normal); a complete fan has every facet twice
        let mut facet_owners: BTreeMap<Vec<usize>, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, mc) in cones.iter().enumerate() {
            for (fi, f) in mc.cone.facets().iter().enumerate() {
                let on: Vec<usize> = mc
                    .ray_indices
                    .iter()
                    .copied()
                    .filter(|&r| dot(f.coords(), prim_rays[r].coords()).is_zero())
                    .collect();
                facet_owners.entry(on).or_default().push((ci, fi));
            }
        }
        let mut walls = Vec::new();
        let mut adjacency = vec![Vec::new(); cones.len()];
        for (wall_rays, owners) in &facet_owners {
            match owners.as_slice() {
                [(s, fi), (t, _)] => {
                    let (s, fi, t) = (*s, *fi, *t);
                    adjacency[s].push(t);
                    adjacency[t].push(s);
                    let u = cones[s].cone.facets()[fi].clone();
                    let candidates: Vec<usize> = cones[t]
                        .ray_indices
                        .iter()
                        .copied()
                        .filter(|r| !wall_rays.contains(r))
                        .collect();
                    if candidates.iter().any(|&r| !dot(u.coords(), prim_rays[r].coords()).is_negative()) {
                        return Err(Error::NotAFan(format!("cones {s} and {t} lie on one side of their wall")));
                    }
                    walls.push(Wall {
                        sigma: s,
                        tau: t,
                        wall_rays: wall_rays.clone(),
                        u,
                        v_j: candidates[0],
                        candidates,
                    });
                }
                [(s, _)] => {
                    return Err(Error::NotComplete(format!(
                        "facet with rays {wall_rays:?} of cone {s} has no neighbour"
                    )))
                }
                _ => {
                    return Err(Error::NotAFan(format!(
                        "facet with rays {wall_rays:?} is shared by more than two cones"
                    )))
                }
            }
        }
        let mut reached = vec![false; cones.len()];
        let mut queue = VecDeque::from([0usize]);
        reached[0] = true;
        while let Some(c) = queue.pop_front() {
            for &d in &adjacency[c] {
                if !reached[d] {
                    reached[d] = true;
                    queue.push_back(d);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(Error::NotComplete("adjacency graph is disconnected".into()));
        }
        walls.sort_by_key(|w| (w.sigma, w.tau));
        Ok(Self { rank, rays: prim_rays, cones, walls })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[LatticeVector<Z>] {
        &self.rays
    }

    pub fn cones(&self) -> &[MaxCone<Z>] {
        &self.cones
    }

    pub fn cone(&self, sigma: usize) -> &MaxCone<Z> {
        &self.cones[sigma]
    }

    /// Each wall once, oriented from the lower-indexed cone.
    pub fn walls(&self) -> &[Wall<Z>] {
        &self.walls
    }

    /// All walls of `sigma`, each oriented so that `u` is the `σ`-side normal.
    pub fn walls_of_cone(&self, sigma: usize) -> Vec<Wall<Z>> {
        let mut out = Vec::new();
        for w in &self.walls {
            if w.sigma == sigma {
                out.push(w.clone());
            } else if w.tau == sigma {
                let candidates: Vec<usize> = self.cones[w.sigma]
                    .ray_indices
                    .iter()
                    .copied()
                    .filter(|r| !w.wall_rays.contains(r))
                    .collect();
                out.push(Wall {
                    sigma,
                    tau: w.sigma,
                    wall_rays: w.wall_rays.clone(),
                    u: w.u.neg(),
                    v_j: candidates[0],
                    candidates,
                });
            }
        }
        out.sort_by_key(|w| w.tau);
        out
    }

    pub fn is_simplicial(&self) -> bool {
        self.cones.iter().all(|c| c.ray_indices.len() == self.rank)
    }

    /// Index of a maximal cone containing `x`, if any.
    pub fn locate(&self, x: &[Z]) -> Option<usize> {
        self.cones.iter().position(|c| c.cone.contains_point(x))
    }
}

/// `σ ∩ τ` must be the cone over their shared rays and a face of both.
fn check_meet<Z: Int>(
    a: &MaxCone<Z>,
    b: &MaxCone<Z>,
    rays: &[LatticeVector<Z>],
    rank: usize,
) -> std::result::Result<(), String> {
    let shared: Vec<usize> = a.ray_indices.iter().copied().filter(|r| b.ray_indices.contains(r)).collect();
    let exposing = |mc: &MaxCone<Z>| -> std::result::Result<Vec<Z>, String> {
        // sum of facet normals vanishing on the shared rays exposes the face they span
        let tight: Vec<&LatticeVector<Z>> = mc
            .cone
            .facets()
            .iter()
            .filter(|f| shared.iter().all(|&r| dot(f.coords(), rays[r].coords()).is_zero()))
            .collect();
        let on_face = mc
            .ray_indices
            .iter()
            .filter(|&&r| tight.iter().all(|f| dot(f.coords(), rays[r].coords()).is_zero()))
            .count();
        if on_face != shared.len() {
            return Err("shared rays do not span a common face".into());
        }
        let mut sum = vec![Z::zero(); rank];
        for f in tight {
            for (s, x) in sum.iter_mut().zip(f.coords()) {
                *s = s.clone() + x.clone();
            }
        }
        Ok(sum)
    };
    let fa = exposing(a)?;
    let fb = exposing(b)?;
    // is there x = Σ α_i a_i = Σ β_j b_j with f_a(x) + f_b(x) = 1?
    let na = a.ray_indices.len();
    let nb = b.ray_indices.len();
    let mut rows: Vec<Vec<Ratio<Z>>> = (0..rank)
        .map(|k| {
            a.ray_indices
                .iter()
                .map(|&r| rat(rays[r].coords()[k].clone()))
                .chain(b.ray_indices.iter().map(|&r| -rat(rays[r].coords()[k].clone())))
                .collect()
        })
        .collect();
    rows.push(
        a.ray_indices
            .iter()
            .map(|&r| rat(dot(&fa, rays[r].coords()) + dot(&fb, rays[r].coords())))
            .chain(std::iter::repeat_n(Ratio::zero(), nb))
            .collect(),
    );
    let mut rhs = vec![Ratio::zero(); rank];
    rhs.push(Ratio::one());
    if lp::feasible_point(&rows, &rhs, na + nb).is_some() {
        return Err("cones overlap beyond a common face".into());
    }
    Ok(())
}

/// Normal fan of a full-dimensional lattice polytope together with the
/// polytope's own divisor.
#[derive(Clone, Debug)]
pub struct NormalFan<Z> {
    pub fan: Fan<Z>,
    /// Coefficient of each ray in the divisor whose polytope is the input.
    pub coefficients: Vec<Z>,
    /// The vertex of the polytope belonging to each maximal cone.
    pub vertices: Vec<Vec<Z>>,
}

/// Rays are the primitive inner facet normals; the cone of a vertex is spanned
/// by the normals of the facets through it.
pub fn normal_fan<Z: Int>(points: &[Vec<Z>], rank: usize) -> Result<NormalFan<Z>> {
    let facets = lattice_hull_facets(points, rank).ok_or(Error::NotFullDimensional)?;
    let verts = hull_vertices(points, &facets, rank);
    let rays: Vec<LatticeVector<Z>> =
        facets.iter().map(|f| LatticeVector::new(f.normal.clone(), Ambient::N)).collect();
    let cones: Vec<Vec<usize>> = verts
        .iter()
        .map(|&v| facets.iter().enumerate().filter(|(_, f)| f.points.contains(&v)).map(|(i, _)| i).collect())
        .collect();
    let fan = Fan::build(&cones, rays, rank)?;
    debug_assert!(verts.iter().all(|&v| {
        let tight: Vec<&[Z]> =
            facets.iter().filter(|f| f.points.contains(&v)).map(|f| &f.normal[..]).collect();
        int_rank(&tight, rank) == rank
    }));
    Ok(NormalFan {
        fan,
        coefficients: facets.iter().map(|f| f.offset.clone()).collect(),
        vertices: verts.iter().map(|&v| points[v].clone()).collect(),
    })
}
