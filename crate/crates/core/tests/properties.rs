mod common;

use common::{box_points, fiber_extremes, Membership};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use toric_core::divisor::{local_data, polytope, require_local_data, TDivisor};
use toric_core::harness::{random_instance, RandomConfig};
use toric_core::intersection::{edge_length_check, is_nef, wall_intersection};
use toric_core::lambda::{lambda, LambdaMode};
use toric_core::scalar::rat;
use toric_core::semigroup::{generates, hilbert_basis, LatticePointSet};
use toric_core::{Ambient, Cone, LatticeVector, RatVector, Rational};

fn full_cone(dim: usize, coord: i64, max_gens: usize) -> impl Strategy<Value = Cone> {
    prop::collection::vec(prop::collection::vec(-coord..=coord, dim), dim..=max_gens).prop_filter_map(
        "pointed and full-dimensional",
        move |gens| {
            let gens: Vec<LatticeVector> = gens
                .iter()
                .filter(|g| g.iter().any(|&x| x != 0))
                .map(|g| LatticeVector::from_i64s(g, Ambient::M))
                .collect();
            Cone::from_generators(&gens, Ambient::M, dim).ok().filter(Cone::is_full_dimensional)
        },
    )
}

fn any_cone() -> impl Strategy<Value = Cone> {
    prop_oneof![full_cone(2, 4, 4), full_cone(3, 3, 5)]
}

/// A point of the cone as a nonnegative rational combination of its rays.
fn point_in(c: &Cone, weights: &[(u8, u8)]) -> RatVector {
    let mut x = RatVector::zero(c.rank(), Ambient::M);
    for (r, &(num, den)) in c.rays().iter().zip(weights.iter().cycle()) {
        let w = Rational::new(BigInt::from(num % 4), BigInt::from(den % 3 + 1));
        x = x.add(&r.to_rat().scale(&w));
    }
    x
}

fn weights() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((any::<u8>(), any::<u8>()), 1..6)
}

fn lam(c: &Cone, x: &RatVector, mode: LambdaMode) -> Rational {
    lambda(c, x, mode).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_matches_fiber_vertices(c in any_cone(), w in weights()) {
        let x = point_in(&c, &w);
        let (lo, hi) = fiber_extremes(&c, &x);
        prop_assert_eq!(lam(&c, &x, LambdaMode::Min), lo.clone());
        prop_assert_eq!(lam(&c, &x, LambdaMode::Max), hi.clone());
        prop_assert!(lo <= hi);
    }

    #[test]
    fn lambda_is_positively_homogeneous(c in any_cone(), w in weights(), k in 1i64..6, d in 1i64..4) {
        let x = point_in(&c, &w);
        let s = Rational::new(BigInt::from(k), BigInt::from(d));
        for mode in [LambdaMode::Min, LambdaMode::Max] {
            prop_assert_eq!(lam(&c, &x.scale(&s), mode), lam(&c, &x, mode) * s.clone());
        }
    }

    #[test]
    fn lambda_min_subadditive_max_superadditive(c in any_cone(), w1 in weights(), w2 in weights()) {
        let (x, y) = (point_in(&c, &w1), point_in(&c, &w2));
        let xy = x.add(&y);
        prop_assert!(lam(&c, &xy, LambdaMode::Min) <= lam(&c, &x, LambdaMode::Min) + lam(&c, &y, LambdaMode::Min));
        prop_assert!(lam(&c, &xy, LambdaMode::Max) >= lam(&c, &x, LambdaMode::Max) + lam(&c, &y, LambdaMode::Max));
    }

    #[test]
    fn generation_matches_membership(c in prop_oneof![full_cone(2, 4, 4), full_cone(3, 2, 4)],
                                     drop in any::<prop::sample::Index>(), keep_all in any::<bool>(),
                                     extra in prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 0..4)) {
        let n = c.rank();
        let hb = hilbert_basis(&c).unwrap();
        let mut pts: Vec<LatticeVector> = hb.elements.points().to_vec();
        if !keep_all {
            pts.remove(drop.index(pts.len()));
        }
        for e in &extra {
            let p = LatticeVector::from_i64s(&e[..n], Ambient::M);
            if c.contains(&p.to_rat(), false).unwrap() {
                pts.push(p);
            }
        }
        let s = LatticePointSet::new(pts.clone());
        let g = generates(&s, &c).unwrap();
        let mut oracle = Membership::new(&c, s.points());
        let all = box_points(n, 8)
            .filter(|p| c.contains(&LatticeVector::new(p.clone(), Ambient::M).to_rat(), false).unwrap())
            .all(|p| oracle.member(&p));
        prop_assert_eq!(g.generates, all);
        if let Some(m) = g.missing {
            prop_assert!(!oracle.member(m.coords()));
        }
    }

    #[test]
    fn wall_values_are_linear(seed in 0u64..10_000, dim in 2usize..=3, a in -3i64..=3, b in -3i64..=3) {
        let inst = random_instance::<BigInt>(dim, seed, &RandomConfig::for_dim(dim)).unwrap();
        let (ra, rb) = (rat(BigInt::from(a)), rat(BigInt::from(b)));
        let combo = inst.d.scale(&ra).add(&inst.dprime.scale(&rb));
        let (ld, ldp, ldc) = (
            require_local_data(&inst.fan, &inst.d).unwrap(),
            require_local_data(&inst.fan, &inst.dprime).unwrap(),
            require_local_data(&inst.fan, &combo).unwrap(),
        );
        for w in inst.fan.walls() {
            let lhs = wall_intersection(&inst.fan, &ldc, w);
            let rhs = wall_intersection(&inst.fan, &ld, w) * ra.clone() + wall_intersection(&inst.fan, &ldp, w) * rb.clone();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn wall_crossing_identity(seed in 0u64..10_000, dim in 2usize..=3) {
        let inst = random_instance::<BigInt>(dim, seed, &RandomConfig::for_dim(dim)).unwrap();
        for d in [&inst.d, &inst.d.add(&inst.dprime)] {
            let ld = require_local_data(&inst.fan, d).unwrap();
            for w in inst.fan.walls() {
                let value = wall_intersection(&inst.fan, &ld, w);
                let expected = ld.u(w.sigma).add(&w.u.to_rat().scale(&value));
                prop_assert_eq!(ld.u(w.tau), &expected);
            }
        }
        for e in edge_length_check(&inst.fan, &inst.d).unwrap() {
            prop_assert_eq!(e.value, e.length);
        }
    }

    #[test]
    fn nef_iff_local_data_in_polytope(seed in 0u64..10_000, dim in 2usize..=3, k in -2i64..=2) {
        let inst = random_instance::<BigInt>(dim, seed, &RandomConfig::for_dim(dim)).unwrap();
        let shifted = inst.dprime.scale(&rat(BigInt::from(k)));
        for d in [inst.d.clone(), inst.d.add(&inst.dprime), shifted, TDivisor::zero(inst.d.len())] {
            let ld = local_data(&inst.fan, &d).unwrap().unwrap();
            let p = polytope(&inst.fan, &d).unwrap();
            let inside = ld.all().iter().all(|u| p.contains(u));
            prop_assert_eq!(is_nef(&inst.fan, &d).unwrap(), inside);
            let nonneg = inst.fan.walls().iter().all(|w| !wall_intersection(&inst.fan, &ld, w).is_negative());
            prop_assert_eq!(nonneg, inside);
        }
    }
}

#[test]
fn lambda_vanishes_only_at_zero() {
    let c = Cone::from_generators(
        &[common::m_vec(&[1, 0]), common::m_vec(&[1, 3])],
        Ambient::M,
        2,
    )
    .unwrap();
    assert!(lam(&c, &common::m_rat(&[0, 0]), LambdaMode::Min).is_zero());
    assert!(lam(&c, &common::m_rat(&[1, 1]), LambdaMode::Min).is_positive());
}
