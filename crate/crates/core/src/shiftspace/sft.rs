use crate::algebra::{kernel, Field, Matrix, Subspace};
use crate::group::{FiniteSubset, GroupElement, GroupSpec};

use super::{Pattern, PatternSpace, ShiftError};

/// A linear subshift of finite type `X = {x : (g⁻¹x)|_D ∈ L for all g}`.
///
/// `(g⁻¹x)|_D` reads `x` on the translate `gD`, so the law at `g` constrains
/// the values `x(g·d)` for `d ∈ D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSft<F: Field> {
    group: GroupSpec,
    alphabet_dim: usize,
    window: FiniteSubset,
    law: Subspace<F>,
    // functionals cutting out the law, cached
    law_checks: Matrix<F>,
}

impl<F: Field> LinearSft<F> {
    pub fn new(group: GroupSpec, alphabet_dim: usize, window: FiniteSubset, law: Subspace<F>) -> Result<Self, ShiftError> {
        group.check()?;
        if alphabet_dim == 0 {
            return Err(ShiftError::AlphabetMismatch { expected: 1, found: 0 });
        }
        if window.is_empty() {
            return Err(ShiftError::EmptySet("defining window"));
        }
        if let Some(g) = window.iter().find(|g| !group.contains(g)) {
            return Err(ShiftError::ForeignElement(format!("{g} in {group}")));
        }
        if law.ambient_dim() != window.len() * alphabet_dim {
            return Err(ShiftError::LawShape { expected: window.len() * alphabet_dim, found: law.ambient_dim() });
        }
        let law_checks = law.annihilator();
        Ok(LinearSft { group, alphabet_dim, window, law, law_checks })
    }

    /// The full shift `V^G`: window `{1}`, law everything.
    pub fn full(field: F, group: GroupSpec, alphabet_dim: usize) -> Self {
        let window = FiniteSubset::singleton(group.identity());
        Self::new(group, alphabet_dim, window, Subspace::full(field, alphabet_dim)).expect("full shift is well formed")
    }

    /// The zero subshift `{0}`.
    pub fn zero(field: F, group: GroupSpec, alphabet_dim: usize) -> Self {
        let window = FiniteSubset::singleton(group.identity());
        Self::new(group, alphabet_dim, window, Subspace::zero(field, alphabet_dim)).expect("zero shift is well formed")
    }

    pub fn field(&self) -> &F {
        self.law.field()
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn alphabet_dim(&self) -> usize {
        self.alphabet_dim
    }

    pub fn window(&self) -> &FiniteSubset {
        &self.window
    }

    pub fn law(&self) -> &Subspace<F> {
        &self.law
    }

    /// True when no law constrains anything, i.e. `X = V^G`.
    pub fn is_full_shift(&self) -> bool {
        self.law.is_full()
    }

    pub(crate) fn check_support(&self, s: &FiniteSubset) -> Result<(), ShiftError> {
        match s.iter().find(|g| !self.group.contains(g)) {
            Some(g) => Err(ShiftError::ForeignElement(format!("{g} in {}", self.group))),
            None => Ok(()),
        }
    }

    /// Law equations at each anchor `g`, written over the coordinates of
    /// `support`. Window cells `g·d` outside `support` are read as zero.
    pub fn law_rows<'a>(&self, support: &FiniteSubset, anchors: impl IntoIterator<Item = &'a GroupElement>) -> Matrix<F> {
        let f = self.field().clone();
        let n = support.len() * self.alphabet_dim;
        let dv = self.alphabet_dim;
        let mut rows = Vec::new();
        for g in anchors {
            let cells: Vec<Option<usize>> = self.window.iter().map(|d| support.index_of(&g.mul(d))).collect();
            for check in self.law_checks.row_iter() {
                let mut r = vec![f.zero(); n];
                let mut touched = false;
                for (i, cell) in cells.iter().enumerate() {
                    let Some(c) = cell else { continue };
                    for v in 0..dv {
                        let a = &check[i * dv + v];
                        if !f.is_zero(a) {
                            r[c * dv + v] = f.add(&r[c * dv + v], a);
                            touched = true;
                        }
                    }
                }
                if touched {
                    rows.push(r);
                }
            }
        }
        Matrix::from_rows(f, n, rows).expect("rows have support length")
    }

    /// Locally admissible patterns on `E`: every law whose translated window
    /// `gD` fits inside `E` holds.
    pub fn locally_admissible(&self, e: &FiniteSubset) -> Result<PatternSpace<F>, ShiftError> {
        self.check_support(e)?;
        let anchors = e.interior(&self.window);
        let rows = self.law_rows(e, &anchors);
        PatternSpace::new(e.clone(), self.alphabet_dim, kernel(&rows))
    }

    /// Whether the zero-extension of `p` to all of `G` lies in `X`.
    ///
    /// Only the laws anchored in `Ω^{+D}` see the support of `p`; all others
    /// read the zero pattern, which is lawful.
    pub fn member_zero_extension(&self, p: &Pattern<F>) -> Result<bool, ShiftError> {
        if p.alphabet_dim() != self.alphabet_dim {
            return Err(ShiftError::AlphabetMismatch { expected: self.alphabet_dim, found: p.alphabet_dim() });
        }
        self.check_support(p.support())?;
        let anchors = p.support().neighborhood(&self.window);
        let rows = self.law_rows(p.support(), &anchors);
        Ok(rows.apply(p.values())?.iter().all(|v| self.field().is_zero(v)))
    }

    /// Patterns on `support` whose zero-extension lies in `X`.
    pub fn finitely_supported(&self, support: &FiniteSubset) -> Result<PatternSpace<F>, ShiftError> {
        self.check_support(support)?;
        let anchors = support.neighborhood(&self.window);
        let rows = self.law_rows(support, &anchors);
        PatternSpace::new(support.clone(), self.alphabet_dim, kernel(&rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    /// ℤ, D = {0,1}, L = {(u,v) : u = v}.
    fn constants(dim: usize) -> LinearSft<PrimeField> {
        let f = gf2();
        let window = FiniteSubset::integers([0, 1]);
        let rows = (0..dim)
            .map(|v| {
                let mut r = vec![0; 2 * dim];
                r[v] = 1;
                r[dim + v] = 1;
                r
            })
            .collect();
        let law = Subspace::span(f, 2 * dim, rows).unwrap();
        LinearSft::new(GroupSpec::z(), dim, window, law).unwrap()
    }

    #[test]
    fn full_shift_is_unconstrained() {
        let x = LinearSft::full(gf2(), GroupSpec::z2(), 2);
        let e = GroupSpec::z2().folner_box(3).unwrap();
        assert_eq!(x.locally_admissible(&e).unwrap().dim(), 18);
    }

    #[test]
    fn constants_on_three_sites() {
        for dim in 1..=2 {
            let x = constants(dim);
            let p = x.locally_admissible(&FiniteSubset::integers(0..3)).unwrap();
            assert_eq!(p.dim(), dim);
        }
    }

    #[test]
    fn zero_extension_membership() {
        let f = gf2();
        let x = constants(1);
        let support = FiniteSubset::integers([0]);
        let one = Pattern::new(f, support.clone(), 1, vec![1]).unwrap();
        assert!(!x.member_zero_extension(&one).unwrap());
        let zero = Pattern::zero(f, support.clone(), 1);
        assert!(x.member_zero_extension(&zero).unwrap());
        let full = LinearSft::full(f, GroupSpec::z(), 1);
        assert!(full.member_zero_extension(&one).unwrap());
    }

    #[test]
    fn malformed_law_rejected() {
        let f = gf2();
        let window = FiniteSubset::integers([0, 1]);
        let err = LinearSft::new(GroupSpec::z(), 1, window.clone(), Subspace::full(f, 3)).unwrap_err();
        assert!(matches!(err, ShiftError::LawShape { expected: 2, found: 3 }));
        let err = LinearSft::new(GroupSpec::z2(), 1, window, Subspace::full(f, 2)).unwrap_err();
        assert!(matches!(err, ShiftError::ForeignElement(_)));
    }
}
