mod common;

use common::{element_of, gf, matrix_of, nearest_neighbor_sft, random_pattern};
use lingoe::algebra::Subspace;
use lingoe::group::{FiniteSubset, GroupElement, GroupSpec};
use lingoe::shiftspace::{project, zero_boundary_extension, LinearSft, PatternSpace, StabilizationPolicy};
use proptest::prelude::*;

/// `x₁(n) = y(n) + y(n+1)`, `x₂ = y`: a copy of the full shift, strongly irreducible.
fn graph_of_xor() -> LinearSft<lingoe::algebra::PrimeField> {
    let law = Subspace::from_constraints(&matrix_of(2, 1, 4, &[1, 1, 0, 1]));
    LinearSft::new(GroupSpec::z(), 2, FiniteSubset::integers([0, 1]), law).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn projection_dimension_is_shift_invariant(x in nearest_neighbor_sft(), n in 1usize..6, g in -20i64..20) {
        let f = GroupSpec::z().folner_box(n).unwrap();
        let shifted = f.translate(&GroupElement::grid(&[g]));
        let policy = StabilizationPolicy::fixpoint_1d();
        prop_assert_eq!(project(&x, &f, &policy).unwrap().dim(), project(&x, &shifted, &policy).unwrap().dim());
    }

    #[test]
    fn plateau_projection_is_shift_invariant_on_z2(rows in prop::collection::vec(prop::collection::vec(0u64..2, 3), 0..=2), n in 1usize..4, g in prop::collection::vec(-6i64..6, 2)) {
        let law = Subspace::from_constraints(&matrix_of(2, rows.len(), 3, &rows.concat()));
        let x = LinearSft::new(GroupSpec::z2(), 1, FiniteSubset::grid(&[&[0, 0], &[0, 1], &[1, 0]]), law).unwrap();
        let f = GroupSpec::z2().folner_box(n).unwrap();
        let policy = StabilizationPolicy::default();
        let a = project(&x, &f, &policy).unwrap();
        let b = project(&x, &f.translate(&GroupElement::grid(&g)), &policy).unwrap();
        prop_assert_eq!((a.upper.dim(), a.lower.dim()), (b.upper.dim(), b.lower.dim()));
    }

    #[test]
    fn restriction_is_consistent(x in nearest_neighbor_sft(), n in 1usize..5, extra in 1usize..4, offset in 0i64..4) {
        let policy = StabilizationPolicy::fixpoint_1d();
        let big = GroupSpec::z().folner_box(n + extra).unwrap();
        let small = GroupSpec::z().folner_box(n).unwrap().translate(&GroupElement::grid(&[offset.min(extra as i64)]));
        let pb = project(&x, &big, &policy).unwrap();
        let ps = project(&x, &small, &policy).unwrap();
        prop_assert!(pb.is_exact() && ps.is_exact());
        prop_assert_eq!(&pb.upper.restrict(&small).unwrap(), &ps.upper);
        prop_assert!(ps.dim() <= pb.dim());
    }

    #[test]
    fn plateau_restriction_is_contained(x in nearest_neighbor_sft(), n in 1usize..5, extra in 1usize..3) {
        let policy = StabilizationPolicy::default();
        let big = GroupSpec::z().folner_box(n + extra).unwrap();
        let small = GroupSpec::z().folner_box(n).unwrap();
        let pb = project(&x, &big, &policy).unwrap();
        let ps = project(&x, &small, &policy).unwrap();
        prop_assert!(pb.upper.restrict(&small).unwrap().is_subspace_of(&ps.upper).unwrap());
        prop_assert!(ps.lower.is_subspace_of(&ps.upper).unwrap());
    }

    #[test]
    fn gluing_far_apart_patterns(
        x in nearest_neighbor_sft(),
        s1 in prop::collection::btree_set(0i64..4, 1..4),
        s2 in prop::collection::btree_set(10i64..14, 1..4),
        raw in prop::collection::vec(0i64..2, 16),
        lawful in (any::<bool>(), any::<bool>()),
    ) {
        let f = gf(2);
        let dv = x.alphabet_dim();
        let pick = |support: FiniteSubset, lawful: bool, raw: &[i64]| {
            if lawful {
                element_of(&x.finitely_supported(&support).unwrap(), raw)
            } else {
                random_pattern(&f, &support, dv, raw)
            }
        };
        let p1 = pick(FiniteSubset::integers(s1), lawful.0, &raw[..8]);
        let p2 = pick(FiniteSubset::integers(s2), lawful.1, &raw[8..]);
        prop_assert!(p1.support().neighborhood(x.window()).is_disjoint(&p2.support().neighborhood(x.window())));
        let both = x.member_zero_extension(&p1).unwrap() && x.member_zero_extension(&p2).unwrap();
        prop_assert_eq!(x.member_zero_extension(&p1.glue(&p2).unwrap()).unwrap(), both);
    }

    #[test]
    fn zero_boundary_extension_exists_on_irreducible_sft(n in 1usize..6, offset in -5i64..5, raw in prop::collection::vec(0i64..2, 12), full in any::<bool>()) {
        let x = if full { LinearSft::full(gf(2), GroupSpec::z(), 2) } else { graph_of_xor() };
        let omega = GroupSpec::z().folner_box(n).unwrap().translate(&GroupElement::grid(&[offset]));
        let admissible = project(&x, &omega, &StabilizationPolicy::fixpoint_1d()).unwrap();
        let p = element_of(&admissible.upper, &raw);
        let m = GroupSpec::z().ball(2);
        let ext = zero_boundary_extension(&x, &p, &m).unwrap();
        prop_assert!(ext.is_some());
        let ext = ext.unwrap();
        prop_assert_eq!(ext.restrict(&omega).unwrap(), p);
        prop_assert!(x.member_zero_extension(&ext).unwrap());
    }
}

#[test]
fn zero_boundary_extension_fails_off_the_subshift() {
    let x = graph_of_xor();
    let omega = FiniteSubset::integers([0, 1]);
    // x₁(0) = 1 but y(0) = y(1) = 0
    let p = random_pattern(&gf(2), &omega, 2, &[1, 0, 0, 0]);
    assert!(zero_boundary_extension(&x, &p, &GroupSpec::z().ball(2)).unwrap().is_none());
}

/// Patterns vanishing on `2ℤ` lose one dimension per even site.
#[test]
fn vanishing_on_even_sites_loses_their_count() {
    let f = gf(2);
    let x = LinearSft::full(f, GroupSpec::z(), 1);
    for m in 1..=6 {
        let window = GroupSpec::z().folner_box(2 * m).unwrap();
        let full = project(&x, &window, &StabilizationPolicy::fixpoint_1d()).unwrap();
        let even: Vec<usize> = window.iter().enumerate().filter(|(_, g)| g.coords().unwrap()[0] % 2 == 0).map(|(i, _)| i).collect();
        let mut checks = vec![0; even.len() * 2 * m];
        for (r, &c) in even.iter().enumerate() {
            checks[r * 2 * m + c] = 1;
        }
        let vanish = PatternSpace::new(window.clone(), 1, Subspace::from_constraints(&matrix_of(2, even.len(), 2 * m, &checks))).unwrap();
        let z = full.upper.intersect(&vanish).unwrap();
        assert_eq!(z.dim(), m);
        assert!(z.dim() <= full.dim() - even.len());
    }
}
