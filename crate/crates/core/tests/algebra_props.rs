mod common;

use common::{gf, matrix_of, matrix_parts};
use lingoe::algebra::{image, kernel, rref, Field, Matrix, Rationals, Subspace};
use proptest::prelude::*;

/// Applies `(kind, i, j, c)` row operations: swap, scale by a nonzero, add a multiple.
fn mix_rows(m: &Matrix<lingoe::algebra::PrimeField>, p: u64, ops: &[(u8, usize, usize, u64)]) -> Matrix<lingoe::algebra::PrimeField> {
    let f = *m.field();
    let mut rows: Vec<Vec<u64>> = m.row_iter().map(|r| r.to_vec()).collect();
    if rows.is_empty() {
        return m.clone();
    }
    let n = rows.len();
    for &(kind, i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        match kind % 3 {
            0 => rows.swap(i, j),
            1 => {
                let c = 1 + c % (p - 1);
                rows[i] = rows[i].iter().map(|x| f.mul(x, &c)).collect();
            }
            _ if i != j => {
                let add: Vec<u64> = rows[j].iter().map(|x| f.mul(x, &(c % p))).collect();
                rows[i] = rows[i].iter().zip(add).map(|(a, b)| f.add(a, &b)).collect();
            }
            _ => {}
        }
    }
    Matrix::from_rows(f, m.cols(), rows).unwrap()
}

proptest! {
    #[test]
    fn rref_is_invariant_under_row_operations(
        (p, r, c, entries) in matrix_parts(5, 6),
        ops in prop::collection::vec((0u8..3, 0usize..5, 0usize..5, 0u64..5), 0..12),
    ) {
        let m = matrix_of(p, r, c, &entries);
        prop_assert_eq!(rref(&m), rref(&mix_rows(&m, p, &ops)));
    }

    #[test]
    fn rank_plus_nullity_is_column_count((p, r, c, entries) in matrix_parts(6, 7)) {
        let m = matrix_of(p, r, c, &entries);
        let full = Subspace::full(gf(p), c);
        prop_assert_eq!(image(&m.transpose(), &Subspace::full(gf(p), r)).unwrap().dim() + kernel(&m).dim(), c);
        prop_assert_eq!(image(&m, &full).unwrap().dim() + kernel(&m).dim(), c);
    }

    #[test]
    fn rank_plus_nullity_over_q(r in 0usize..5, c in 1usize..6, entries in prop::collection::vec(-3i64..=3, 30)) {
        let rows: Vec<Vec<_>> = (0..r).map(|i| (0..c).map(|j| Rationals.from_i64(entries[i * c + j])).collect()).collect();
        let m = Matrix::from_rows(Rationals, c, rows).unwrap();
        prop_assert_eq!(image(&m, &Subspace::full(Rationals, c)).unwrap().dim() + kernel(&m).dim(), c);
    }

    #[test]
    fn mutual_containment_is_equality(
        (p, r, c, entries) in matrix_parts(4, 5),
        ops in prop::collection::vec((0u8..3, 0usize..5, 0usize..5, 0u64..5), 0..6),
        other in prop::collection::vec(0u64..5, 20),
    ) {
        let a = Subspace::row_space(&matrix_of(p, r, c, &entries));
        let same = Subspace::row_space(&mix_rows(&matrix_of(p, r, c, &entries), p, &ops));
        let b = Subspace::row_space(&matrix_of(p, r, c, &other));
        prop_assert!(a.contains(&same).unwrap() && same.contains(&a).unwrap());
        prop_assert_eq!(a.contains(&b).unwrap() && b.contains(&a).unwrap(), a == b);
    }

    #[test]
    fn sum_and_intersection_dimensions((p, r, c, entries) in matrix_parts(4, 6), other in prop::collection::vec(0u64..5, 24), k in 0usize..4) {
        let a = Subspace::row_space(&matrix_of(p, r, c, &entries));
        let b = Subspace::row_space(&matrix_of(p, k, c, &other));
        let meet = a.intersect(&b).unwrap();
        let join = a.sum(&b).unwrap();
        prop_assert_eq!(meet.dim() + join.dim(), a.dim() + b.dim());
        prop_assert!(a.contains(&meet).unwrap() && b.contains(&meet).unwrap());
        prop_assert!(join.contains(&a).unwrap() && join.contains(&b).unwrap());
    }

    #[test]
    fn canonical_basis_shape((p, r, c, entries) in matrix_parts(5, 6)) {
        let s = rref(&matrix_of(p, r, c, &entries));
        let pivots = s.pivots().to_vec();
        prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
        for (i, row) in s.basis_vectors().enumerate() {
            prop_assert_eq!(row[pivots[i]], 1);
            for (k, &q) in pivots.iter().enumerate() {
                if k != i {
                    prop_assert_eq!(row[q], 0);
                }
            }
        }
    }
}
