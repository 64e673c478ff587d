#![allow(dead_code)]

use lingoe::algebra::{Field, Matrix, PrimeField, Subspace};
use lingoe::automaton::LinearCa;
use lingoe::group::{FiniteSubset, GroupElement, GroupSpec};
use lingoe::shiftspace::{LinearSft, Pattern, PatternSpace};
use proptest::prelude::*;

pub fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// Entries in `0..p`, row-major.
pub fn matrix_of(p: u64, rows: usize, cols: usize, entries: &[u64]) -> Matrix<PrimeField> {
    let data = (0..rows * cols).map(|i| entries.get(i).copied().unwrap_or(0) % p).collect();
    Matrix::new(gf(p), rows, cols, data).unwrap()
}

pub fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

/// `(p, rows, cols, entries)`.
pub fn matrix_parts(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (u64, usize, usize, Vec<u64>)> {
    (prime(), 0..=max_rows, 1..=max_cols).prop_flat_map(|(p, r, c)| (Just(p), Just(r), Just(c), prop::collection::vec(0..p, r * c)))
}

/// A law on `ℤ` with window `{0,1}` given by up to three random GF(2) checks.
pub fn nearest_neighbor_sft() -> impl Strategy<Value = LinearSft<PrimeField>> {
    (1usize..=2)
        .prop_flat_map(|dv| (Just(dv), prop::collection::vec(prop::collection::vec(0u64..2, 2 * dv), 0..=3)))
        .prop_map(|(dv, rows)| {
            let m = matrix_of(2, rows.len(), 2 * dv, &rows.concat());
            let law = Subspace::from_constraints(&m);
            LinearSft::new(GroupSpec::z(), dv, FiniteSubset::integers([0, 1]), law).unwrap()
        })
}

/// A random automaton on `ℤ` with memory inside `{-1,0,1}`.
pub fn z_automaton(p: u64, dv: usize) -> impl Strategy<Value = LinearCa<PrimeField>> {
    (prop::collection::btree_set(-1i64..=1, 1..=3), prop::collection::vec(0..p, 3 * dv * dv)).prop_map(move |(mem, entries)| {
        let memory = FiniteSubset::integers(mem.iter().copied());
        let coeffs = (0..memory.len()).map(|i| matrix_of(p, dv, dv, &entries[i * dv * dv..(i + 1) * dv * dv])).collect();
        LinearCa::new(gf(p), GroupSpec::z(), dv, memory, coeffs).unwrap()
    })
}

pub fn random_pattern<F: Field>(field: &F, support: &FiniteSubset, dv: usize, raw: &[i64]) -> Pattern<F> {
    let values = (0..support.len() * dv).map(|i| field.from_i64(raw.get(i).copied().unwrap_or(0))).collect();
    Pattern::new(field.clone(), support.clone(), dv, values).unwrap()
}

/// A combination of the basis patterns of `space` with coefficients from `raw`.
pub fn element_of<F: Field>(space: &PatternSpace<F>, raw: &[i64]) -> Pattern<F> {
    let field = space.space().field().clone();
    let mut values = vec![field.zero(); space.support().len() * space.alphabet_dim()];
    for (b, c) in space.basis_patterns().iter().zip(raw.iter().chain(std::iter::repeat(&0))) {
        let c = field.from_i64(*c);
        for (v, bv) in values.iter_mut().zip(b.values()) {
            *v = field.add(v, &field.mul(&c, bv));
        }
    }
    Pattern::new(field, space.support().clone(), space.alphabet_dim(), values).unwrap()
}

pub fn free_word() -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(prop::sample::select(vec!['a', 'A', 'b', 'B']), 0..8).prop_map(|cs| GroupElement::word(&cs.into_iter().collect::<String>()).unwrap())
}
