//! Randomized properties through the public API.

use std::sync::Arc;

use artin_core::artin::{affine_transport, closed_form, inv_general, tripartite_symbol};
use artin_core::ff::{field_of_order, FieldCtx, FieldElem};
use artin_core::pgl2::Pgl2;
use artin_core::poly::{Poly, ProjPoint, RatFunc};
use artin_core::quotient::{named_quotient, verify_quotient};
use artin_core::subgroup::Subgroup;
use proptest::prelude::*;

const ORDERS: [u64; 10] = [3, 4, 5, 7, 8, 9, 11, 13, 16, 25];

fn field() -> impl Strategy<Value = Arc<FieldCtx>> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| field_of_order(q).unwrap())
}

fn elem(f: &FieldCtx, i: u64) -> FieldElem {
    f.elem(i % f.order()).unwrap()
}

fn matrix(f: &FieldCtx, seed: [u64; 4]) -> Option<Pgl2> {
    Pgl2::new(f, seed.map(|s| elem(f, s))).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_laws(f in field(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (elem(&f, a), elem(&f, b), elem(&f, c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.one());
            prop_assert_eq!(f.pow(a, f.order() as u128 - 1), f.one());
        }
        if !a.is_zero() && !b.is_zero() && f.p() != 2 {
            let chi = |x| f.quadratic_character(x).unwrap();
            prop_assert_eq!(chi(f.mul(a, b)), chi(a) * chi(b));
        }
    }

    #[test]
    fn pgl2_action_is_a_group_action(f in field(), s in any::<[u64; 4]>(), t in any::<[u64; 4]>(), v in any::<u64>()) {
        let (Some(g), Some(h)) = (matrix(&f, s), matrix(&f, t)) else { return Ok(()) };
        let v = ProjPoint::Finite(elem(&f, v));
        prop_assert_eq!(g.mul(&h, &f).act(v, &f), g.act(h.act(v, &f), &f));
        prop_assert_eq!(g.inv(&f).act(g.act(v, &f), &f), v);
        prop_assert!(g.pow(g.order(&f), &f).is_identity());
    }

    #[test]
    fn polynomial_division(f in field(), a in prop::collection::vec(any::<u64>(), 1..12), b in prop::collection::vec(any::<u64>(), 1..6)) {
        let a = Poly::new(&f, a.iter().map(|&i| elem(&f, i)).collect());
        let b = Poly::new(&f, b.iter().map(|&i| elem(&f, i)).collect());
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(quo.mul(&b).add(&rem), a);
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
    }

    #[test]
    fn quotient_maps_are_invariant_and_verified(f in field(), s in any::<[u64; 4]>()) {
        let Some(g) = matrix(&f, s) else { return Ok(()) };
        prop_assume!(!g.is_identity());
        let group = Arc::new(Subgroup::cyclic(&f, g).unwrap());
        let q = named_quotient(&group).unwrap();
        prop_assert!(verify_quotient(&group, q.map()).unwrap().ok());
        let moved = q.map().compose(&RatFunc::mobius(&f, g.entries()));
        prop_assert_eq!(&moved, q.map());
    }

    #[test]
    fn engine_matches_closed_form_for_cyclic_groups(f in field(), s in any::<[u64; 4]>(), t in any::<u64>()) {
        let Some(g) = matrix(&f, s) else { return Ok(()) };
        prop_assume!(!g.is_identity());
        let group = Arc::new(Subgroup::cyclic(&f, g).unwrap());
        let q = named_quotient(&group).unwrap();
        let tau = ProjPoint::Finite(elem(&f, t));
        prop_assert_eq!(inv_general(&q, tau).unwrap(), closed_form(&group, tau).unwrap());
    }

    #[test]
    fn affine_change_of_map_moves_values(f in field(), a in 1u64.., b in any::<u64>(), t in any::<u64>()) {
        let a = f.elem(1 + a % (f.order() - 1)).unwrap();
        let group = Arc::new(Subgroup::g3(&f).unwrap());
        let q = named_quotient(&group).unwrap();
        let (lhs, rhs) = affine_transport(&q, a, elem(&f, b), ProjPoint::Finite(elem(&f, t))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symbol_mirror(f in field(), t in any::<u64>()) {
        let t = elem(&f, t);
        let mirror = f.sub(f.from_int(3), t);
        if let (Ok(a), Ok(b)) = (tripartite_symbol(&f, t), tripartite_symbol(&f, mirror)) {
            prop_assert_eq!(b, -a);
        }
    }
}
