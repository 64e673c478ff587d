//! Linear cellular automata `τ(x)(g) = Σ_{m∈M} c_m x(gm)`.

mod laurent;

use std::collections::BTreeMap;

use crate::algebra::{image, kernel, AlgebraError, Field, Matrix, Subspace};
use crate::group::{FiniteSubset, GroupElement, GroupError, GroupSpec};
use crate::shiftspace::{coordinates, project, LinearSft, Pattern, PatternSpace, Projection, ShiftError, StabilizationPolicy};

pub use laurent::{LaurentMatrix, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("{memory} memory elements but {coeffs} coefficient blocks")]
    BlockCount { memory: usize, coeffs: usize },
    #[error("coefficient block {index} is {rows}x{cols}, expected {dim}x{dim}")]
    BlockShape { index: usize, rows: usize, cols: usize, dim: usize },
    #[error("automaton and subshift disagree: {0}")]
    Incompatible(String),
    #[error("operation requires the group Z")]
    NeedsRankOne,
}

/// A linear cellular automaton over `V = K^n`, stored as one `n×n` block per
/// memory element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCa<F: Field> {
    field: F,
    group: GroupSpec,
    alphabet_dim: usize,
    memory: FiniteSubset,
    coeffs: Vec<Matrix<F>>,
}

impl<F: Field> LinearCa<F> {
    /// `coeffs[i]` is the block for the `i`-th memory element in canonical order.
    pub fn new(field: F, group: GroupSpec, alphabet_dim: usize, memory: FiniteSubset, coeffs: Vec<Matrix<F>>) -> Result<Self, AutomatonError> {
        group.check()?;
        if alphabet_dim == 0 {
            return Err(ShiftError::AlphabetMismatch { expected: 1, found: 0 }.into());
        }
        if memory.is_empty() {
            return Err(ShiftError::EmptySet("memory set").into());
        }
        if let Some(g) = memory.iter().find(|g| !group.contains(g)) {
            return Err(ShiftError::ForeignElement(format!("{g} in {group}")).into());
        }
        if coeffs.len() != memory.len() {
            return Err(AutomatonError::BlockCount { memory: memory.len(), coeffs: coeffs.len() });
        }
        for (index, c) in coeffs.iter().enumerate() {
            if c.rows() != alphabet_dim || c.cols() != alphabet_dim {
                return Err(AutomatonError::BlockShape { index, rows: c.rows(), cols: c.cols(), dim: alphabet_dim });
            }
        }
        Ok(LinearCa { field, group, alphabet_dim, memory, coeffs })
    }

    /// Builds from `(m, c_m)` terms; repeated elements have their blocks summed.
    pub fn from_terms(field: F, group: GroupSpec, alphabet_dim: usize, terms: impl IntoIterator<Item = (GroupElement, Matrix<F>)>) -> Result<Self, AutomatonError> {
        let mut acc: BTreeMap<GroupElement, Matrix<F>> = BTreeMap::new();
        for (index, (g, c)) in terms.into_iter().enumerate() {
            if c.rows() != alphabet_dim || c.cols() != alphabet_dim {
                return Err(AutomatonError::BlockShape { index, rows: c.rows(), cols: c.cols(), dim: alphabet_dim });
            }
            let merged = match acc.remove(&g) {
                Some(prev) => prev.add(&c)?,
                None => c,
            };
            acc.insert(g, merged);
        }
        if acc.is_empty() {
            return Ok(Self::zero(field, group, alphabet_dim));
        }
        let memory = FiniteSubset::new(acc.keys().cloned());
        let coeffs = acc.into_values().collect();
        Self::new(field, group, alphabet_dim, memory, coeffs)
    }

    pub fn identity(field: F, group: GroupSpec, alphabet_dim: usize) -> Self {
        let id = Matrix::identity(field.clone(), alphabet_dim);
        Self::new(field, group, alphabet_dim, FiniteSubset::singleton(group.identity()), vec![id]).expect("identity is well formed")
    }

    pub fn zero(field: F, group: GroupSpec, alphabet_dim: usize) -> Self {
        let z = Matrix::zeros(field.clone(), alphabet_dim, alphabet_dim);
        Self::new(field, group, alphabet_dim, FiniteSubset::singleton(group.identity()), vec![z]).expect("zero is well formed")
    }

    /// `τ(x)(h) = x(hg)`.
    pub fn shift(field: F, group: GroupSpec, alphabet_dim: usize, g: GroupElement) -> Result<Self, AutomatonError> {
        let id = Matrix::identity(field.clone(), alphabet_dim);
        Self::new(field, group, alphabet_dim, FiniteSubset::singleton(g), vec![id])
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn alphabet_dim(&self) -> usize {
        self.alphabet_dim
    }

    pub fn memory(&self) -> &FiniteSubset {
        &self.memory
    }

    pub fn coeffs(&self) -> &[Matrix<F>] {
        &self.coeffs
    }

    pub fn block(&self, m: &GroupElement) -> Option<&Matrix<F>> {
        self.memory.index_of(m).map(|i| &self.coeffs[i])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Matrix<F>)> {
        self.memory.iter().zip(&self.coeffs)
    }

    /// Drops zero blocks. The zero automaton becomes memory `{1}` with a zero block.
    pub fn canonical(&self) -> Self {
        let terms: Vec<_> = self.terms().filter(|(_, c)| !c.is_zero()).map(|(g, c)| (g.clone(), c.clone())).collect();
        Self::from_terms(self.field.clone(), self.group, self.alphabet_dim, terms).expect("blocks already validated")
    }

    /// Same map `V^G → V^G`.
    pub fn same_rule(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }

    /// `τ₁ ∘ τ₂`, with memory `M₁M₂` and blocks `Σ c₁(m₁)·c₂(m₂)`.
    pub fn compose(&self, inner: &Self) -> Result<Self, AutomatonError> {
        self.check_compatible(inner.group, inner.alphabet_dim)?;
        let mut terms = Vec::with_capacity(self.memory.len() * inner.memory.len());
        for (m1, c1) in self.terms() {
            for (m2, c2) in inner.terms() {
                terms.push((m1.mul(m2), c1.mul(c2)?));
            }
        }
        Ok(Self::from_terms(self.field.clone(), self.group, self.alphabet_dim, terms)?.canonical())
    }

    fn check_compatible(&self, group: GroupSpec, alphabet_dim: usize) -> Result<(), AutomatonError> {
        if group != self.group {
            return Err(AutomatonError::Incompatible(format!("group {group} vs {}", self.group)));
        }
        if alphabet_dim != self.alphabet_dim {
            return Err(AutomatonError::Incompatible(format!("alphabet dimension {alphabet_dim} vs {}", self.alphabet_dim)));
        }
        Ok(())
    }

    fn check_sft(&self, x: &LinearSft<F>) -> Result<(), AutomatonError> {
        self.check_compatible(x.group(), x.alphabet_dim())
    }

    /// The matrix of `τ_F : V^{FM} → V^F` together with `FM`.
    pub fn window_matrix(&self, f: &FiniteSubset) -> Result<(FiniteSubset, Matrix<F>), AutomatonError> {
        if let Some(g) = f.iter().find(|g| !self.group.contains(g)) {
            return Err(ShiftError::ForeignElement(format!("{g} in {}", self.group)).into());
        }
        let fm = f.product(&self.memory);
        let dv = self.alphabet_dim;
        let fld = &self.field;
        let mut out = Matrix::zeros(fld.clone(), f.len() * dv, fm.len() * dv);
        for (i, g) in f.iter().enumerate() {
            for (m, c) in self.terms() {
                let j = fm.index_of(&g.mul(m)).expect("gm lies in FM");
                for a in 0..dv {
                    for b in 0..dv {
                        let v = c.get(a, b);
                        if !fld.is_zero(v) {
                            let cur = out.get(i * dv + a, j * dv + b).clone();
                            out.set(i * dv + a, j * dv + b, fld.add(&cur, v));
                        }
                    }
                }
            }
        }
        Ok((fm, out))
    }

    /// `τ(x)|_F` from `p = x|_{FM}`.
    pub fn apply_window(&self, f: &FiniteSubset, p: &Pattern<F>) -> Result<Pattern<F>, AutomatonError> {
        let (fm, w) = self.window_matrix(f)?;
        if p.support() != &fm {
            return Err(ShiftError::SupportMismatch(format!("pattern on {} but FM = {}", p.support(), fm)).into());
        }
        if p.alphabet_dim() != self.alphabet_dim {
            return Err(ShiftError::AlphabetMismatch { expected: self.alphabet_dim, found: p.alphabet_dim() }.into());
        }
        let values = w.apply(p.values())?;
        Ok(Pattern::new(self.field.clone(), f.clone(), self.alphabet_dim, values)?)
    }

    /// `τ(x)|_F` where `x` is the zero-extension of `p` (any support).
    pub fn apply_zero_extended(&self, f: &FiniteSubset, p: &Pattern<F>) -> Result<Pattern<F>, AutomatonError> {
        let fm = f.product(&self.memory);
        let wide = p.restrict(&p.support().intersection(&fm))?.extend_by_zero(&fm)?;
        self.apply_window(f, &wide)
    }

    /// `π_F(τ(X)) = τ_F(π_{FM}(X))`, with both bounds pushed through `τ_F`.
    pub fn image_projection(&self, x: &LinearSft<F>, f: &FiniteSubset, policy: &StabilizationPolicy) -> Result<Projection<F>, AutomatonError> {
        self.check_sft(x)?;
        let (fm, w) = self.window_matrix(f)?;
        let inner = project(x, &fm, policy)?;
        let push = |s: &PatternSpace<F>| -> Result<PatternSpace<F>, AutomatonError> {
            Ok(PatternSpace::new(f.clone(), self.alphabet_dim, image(&w, s.space())?)?)
        };
        Ok(Projection { upper: push(&inner.upper)?, lower: push(&inner.lower)?, status: inner.status, rounds: inner.rounds })
    }

    /// `ker τ ∩ X` as an SFT on the window `D ∪ M`.
    pub fn kernel_sft(&self, x: &LinearSft<F>) -> Result<LinearSft<F>, AutomatonError> {
        self.check_sft(x)?;
        let fld = &self.field;
        let dv = self.alphabet_dim;
        let w = x.window().union(&self.memory);
        let n = w.len() * dv;
        let mut rows: Vec<Vec<F::Elem>> = Vec::new();

        let d_coords = coordinates(&w, x.window(), dv)?;
        for check in x.law().annihilator().row_iter() {
            let mut r = vec![fld.zero(); n];
            for (k, &c) in d_coords.iter().enumerate() {
                r[c] = check[k].clone();
            }
            rows.push(r);
        }
        for a in 0..dv {
            let mut r = vec![fld.zero(); n];
            for (m, c) in self.terms() {
                let j = w.index_of(m).expect("memory lies in window");
                for b in 0..dv {
                    r[j * dv + b] = fld.add(&r[j * dv + b], c.get(a, b));
                }
            }
            rows.push(r);
        }
        let law = kernel(&Matrix::from_rows(fld.clone(), n, rows)?);
        Ok(LinearSft::new(x.group(), dv, w, law)?)
    }

    /// `π_F(ker τ ∩ X)`.
    pub fn kernel_projection(&self, x: &LinearSft<F>, f: &FiniteSubset, policy: &StabilizationPolicy) -> Result<Projection<F>, AutomatonError> {
        Ok(project(&self.kernel_sft(x)?, f, policy)?)
    }

    /// Finitely supported kernel elements of `τ` on `X` with support inside
    /// `region`, as a pattern space on `region`.
    ///
    /// `τ(x)` can be nonzero only on `Ω^{+M}`, and the laws of `X` can fail
    /// only at anchors in `Ω^{+D}`, so these equations are exact.
    pub fn finite_kernel(&self, x: &LinearSft<F>, region: &FiniteSubset) -> Result<PatternSpace<F>, AutomatonError> {
        self.check_sft(x)?;
        let fld = &self.field;
        let dv = self.alphabet_dim;
        let n = region.len() * dv;
        let mut rows: Vec<Vec<F::Elem>> = x.law_rows(region, &region.neighborhood(x.window())).row_iter().map(|r| r.to_vec()).collect();
        for g in region.neighborhood(&self.memory).iter() {
            let mut block = vec![vec![fld.zero(); n]; dv];
            let mut touched = false;
            for (m, c) in self.terms() {
                let Some(j) = region.index_of(&g.mul(m)) else { continue };
                touched = true;
                for (a, r) in block.iter_mut().enumerate() {
                    for b in 0..dv {
                        r[j * dv + b] = fld.add(&r[j * dv + b], c.get(a, b));
                    }
                }
            }
            if touched {
                rows.extend(block);
            }
        }
        let space = kernel(&Matrix::from_rows(fld.clone(), n, rows)?);
        Ok(PatternSpace::new(region.clone(), dv, space)?)
    }

    /// A nonzero finitely supported configuration in `X ∩ ker τ` supported
    /// in the witness region of radius `r`, if one exists.
    pub fn kernel_witness(&self, x: &LinearSft<F>, r: usize) -> Result<Option<Pattern<F>>, AutomatonError> {
        let region = self.group.witness_region(r);
        let k = self.finite_kernel(x, &region)?;
        Ok(k.basis_patterns().into_iter().next())
    }

    /// Replays a kernel witness: the zero-extension lies in `X` and `τ`
    /// vanishes on it.
    pub fn is_kernel_witness(&self, x: &LinearSft<F>, p: &Pattern<F>) -> Result<bool, AutomatonError> {
        self.check_sft(x)?;
        if p.is_zero() || !x.member_zero_extension(p)? {
            return Ok(false);
        }
        let out = p.support().neighborhood(&self.memory);
        Ok(self.apply_zero_extended(&out, p)?.is_zero())
    }

    /// `A(t) = Σ_m c_m t^m` for automata over `ℤ`.
    pub fn laurent_symbol(&self) -> Result<LaurentMatrix<F>, AutomatonError> {
        if self.group != GroupSpec::z() {
            return Err(AutomatonError::NeedsRankOne);
        }
        let dv = self.alphabet_dim;
        let mut a = LaurentMatrix::zero(self.field.clone(), dv);
        for (m, c) in self.terms() {
            let e = m.coords().expect("grid element")[0];
            for i in 0..dv {
                for j in 0..dv {
                    let term = LaurentPoly::monomial(self.field.clone(), c.get(i, j).clone(), e);
                    let sum = a.get(i, j).add(&term);
                    a.set(i, j, sum);
                }
            }
        }
        Ok(a)
    }

    /// `det A(t)`, shifted so its lowest exponent is 0.
    pub fn laurent_det(&self) -> Result<LaurentPoly<F>, AutomatonError> {
        Ok(self.laurent_symbol()?.det().normalized())
    }

    pub fn laurent_det_nonzero(&self) -> Result<bool, AutomatonError> {
        Ok(!self.laurent_det()?.is_zero())
    }
}

/// Row space of the window map, i.e. `τ_F(V^{FM})`, as a subspace of `V^F`.
pub fn full_image<F: Field>(tau: &LinearCa<F>, f: &FiniteSubset) -> Result<PatternSpace<F>, AutomatonError> {
    let (fm, w) = tau.window_matrix(f)?;
    let all = Subspace::full(tau.field().clone(), fm.len() * tau.alphabet_dim());
    Ok(PatternSpace::new(f.clone(), tau.alphabet_dim(), image(&w, &all)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use crate::shiftspace::StabilizationPolicy;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn one(f: PrimeField) -> Matrix<PrimeField> {
        Matrix::identity(f, 1)
    }

    /// `τ(x)(i) = x(i) + x(i+1)` over GF(2).
    fn xor() -> LinearCa<PrimeField> {
        let f = gf2();
        LinearCa::new(f, GroupSpec::z(), 1, FiniteSubset::integers([0, 1]), vec![one(f), one(f)]).unwrap()
    }

    #[test]
    fn apply_window_by_hand() {
        let f = gf2();
        let tau = xor();
        let window = FiniteSubset::integers([0, 1]);
        let p = Pattern::new(f, FiniteSubset::integers([0, 1, 2]), 1, vec![1, 1, 0]).unwrap();
        let out = tau.apply_window(&window, &p).unwrap();
        assert_eq!(out.values(), &[0, 1]);
        let bad = Pattern::zero(f, window.clone(), 1);
        assert!(matches!(tau.apply_window(&window, &bad), Err(AutomatonError::Shift(ShiftError::SupportMismatch(_)))));
    }

    #[test]
    fn identity_and_zero_windows() {
        let f = gf2();
        let window = FiniteSubset::integers([3, 4]);
        let p = Pattern::new(f, window.clone(), 2, vec![1, 0, 1, 1]).unwrap();
        assert_eq!(LinearCa::identity(f, GroupSpec::z(), 2).apply_window(&window, &p).unwrap(), p);
        assert!(LinearCa::zero(f, GroupSpec::z(), 2).apply_window(&window, &p).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_xor_is_constants() {
        let f = gf2();
        let tau = xor();
        let full = LinearSft::full(f, GroupSpec::z(), 1);
        let window = FiniteSubset::integers([0, 1]);
        for policy in [StabilizationPolicy::default(), StabilizationPolicy::fixpoint_1d()] {
            let k = tau.kernel_projection(&full, &window, &policy).unwrap();
            assert_eq!(k.dim(), 1);
            assert!(k.is_exact());
        }
        assert_eq!(tau.kernel_witness(&full, 6).unwrap(), None);
    }

    #[test]
    fn identity_kernel_and_zero_kernel() {
        let f = gf2();
        let full = LinearSft::full(f, GroupSpec::z2(), 1);
        let window = GroupSpec::z2().folner_box(2).unwrap();
        let policy = StabilizationPolicy::default();
        assert_eq!(LinearCa::identity(f, GroupSpec::z2(), 1).kernel_projection(&full, &window, &policy).unwrap().dim(), 0);
        assert_eq!(LinearCa::zero(f, GroupSpec::z2(), 1).kernel_projection(&full, &window, &policy).unwrap().dim(), 4);
        let w = LinearCa::zero(f, GroupSpec::z2(), 1).kernel_witness(&full, 0).unwrap().unwrap();
        assert_eq!(w.values(), &[1]);
    }

    #[test]
    fn composition_examples() {
        let f = gf2();
        let s1 = LinearCa::shift(f, GroupSpec::z(), 1, GroupElement::grid(&[1])).unwrap();
        let s2 = LinearCa::shift(f, GroupSpec::z(), 1, GroupElement::grid(&[2])).unwrap();
        assert!(s1.compose(&s1).unwrap().same_rule(&s2));

        let tau = xor();
        let id = LinearCa::identity(f, GroupSpec::z(), 1);
        assert_eq!(tau.compose(&id).unwrap(), tau.canonical());
        let sq = tau.compose(&tau).unwrap();
        assert_eq!(sq.memory(), &FiniteSubset::integers([0, 2]));
        assert_eq!(sq.laurent_det().unwrap().to_string(), "1 + t^2");
    }

    #[test]
    fn laurent_examples() {
        let f = gf2();
        assert_eq!(LinearCa::identity(f, GroupSpec::z(), 2).laurent_det().unwrap().to_string(), "1");
        assert_eq!(xor().laurent_det().unwrap().to_string(), "1 + t");
        // every block maps into the first coordinate
        let b = Matrix::from_i64(f, &[&[1, 1], &[0, 0]]);
        let c = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        let tau = LinearCa::new(f, GroupSpec::z(), 2, FiniteSubset::integers([-1, 0, 1]), vec![b.clone(), c, b]).unwrap();
        assert!(!tau.laurent_det_nonzero().unwrap());
        let full = LinearSft::full(f, GroupSpec::z(), 2);
        let w = tau.kernel_witness(&full, 1).unwrap().expect("witness");
        assert!(tau.is_kernel_witness(&full, &w).unwrap());
        assert!(matches!(LinearCa::identity(f, GroupSpec::z2(), 1).laurent_symbol(), Err(AutomatonError::NeedsRankOne)));
    }

    #[test]
    fn image_projection_of_xor_is_full() {
        let f = gf2();
        let full = LinearSft::full(f, GroupSpec::z(), 1);
        let window = GroupSpec::z().folner_box(6).unwrap();
        let p = xor().image_projection(&full, &window, &StabilizationPolicy::fixpoint_1d()).unwrap();
        assert_eq!(p.dim(), 6);
        assert!(p.is_exact());
    }

    #[test]
    fn malformed_blocks_rejected() {
        let f = gf2();
        let err = LinearCa::new(f, GroupSpec::z(), 2, FiniteSubset::integers([0]), vec![one(f)]).unwrap_err();
        assert!(matches!(err, AutomatonError::BlockShape { index: 0, rows: 1, cols: 1, dim: 2 }));
        let err = LinearCa::new(f, GroupSpec::z(), 1, FiniteSubset::integers([0, 1]), vec![one(f)]).unwrap_err();
        assert!(matches!(err, AutomatonError::BlockCount { memory: 2, coeffs: 1 }));
    }
}
