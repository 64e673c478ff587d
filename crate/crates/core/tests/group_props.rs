mod common;

use common::free_word;
use lingoe::group::{covering_shape, greedy_tiling, overlapping_pair, uncovered_interior, FiniteSubset, GroupElement, GroupSpec};
use proptest::prelude::*;

fn grid_point() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-5i64..=5, 2).prop_map(|v| GroupElement::grid(&v))
}

fn grid_set(max: usize) -> impl Strategy<Value = FiniteSubset> {
    prop::collection::vec(grid_point(), 1..=max).prop_map(FiniteSubset::new)
}

proptest! {
    #[test]
    fn free_multiplication_is_associative(a in free_word(), b in free_word(), c in free_word()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn free_reduction_is_idempotent(a in free_word(), b in free_word()) {
        let ab = a.mul(&b);
        prop_assert_eq!(GroupElement::word(&ab.to_string()).unwrap(), ab.clone());
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert_eq!(ab.inv(), b.inv().mul(&a.inv()));
    }

    #[test]
    fn grid_multiplication_is_associative(a in grid_point(), b in grid_point(), c in grid_point()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn neighborhood_is_bounded_by_product(omega in grid_set(6), e in grid_set(4)) {
        let nb = omega.neighborhood(&e);
        prop_assert!(nb.len() <= omega.len() * e.len());
        for g in &nb {
            prop_assert!(!e.translate(g).is_disjoint(&omega));
        }
    }

    #[test]
    fn free_neighborhood_is_bounded_by_product(ws in prop::collection::vec(free_word(), 1..5), es in prop::collection::vec(free_word(), 1..4)) {
        let (omega, e) = (FiniteSubset::new(ws), FiniteSubset::new(es));
        prop_assert!(omega.neighborhood(&e).len() <= omega.len() * e.len());
    }

    #[test]
    fn greedy_tiling_is_deterministic_and_covers(e in grid_set(4), n in 3usize..7) {
        let region = GroupSpec::z2().folner_box(n).unwrap();
        let tiles = greedy_tiling(&e, &region).unwrap();
        prop_assert_eq!(&tiles, &greedy_tiling(&e, &region).unwrap());
        prop_assert!(overlapping_pair(&tiles, &e).is_none());
        prop_assert!(uncovered_interior(&tiles, &covering_shape(&e), &region).is_empty());
    }
}

#[test]
fn folner_ratios_decrease_along_powers_of_two() {
    for group in [GroupSpec::z(), GroupSpec::z2()] {
        let e = group.folner_box(2).unwrap();
        let ratios: Vec<_> = [2, 4, 8, 16].iter().map(|&n| group.folner_ratio(n, &e).unwrap()).collect();
        assert!(ratios.windows(2).all(|w| w[1] <= w[0]), "{group}: {ratios:?}");
    }
}
