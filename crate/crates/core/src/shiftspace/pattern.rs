use crate::algebra::{Field, Subspace};
use crate::group::{FiniteSubset, GroupElement};

use super::ShiftError;

/// Coordinates of `sub` inside the element-major layout of `support`.
pub fn coordinates(support: &FiniteSubset, sub: &FiniteSubset, alphabet_dim: usize) -> Result<Vec<usize>, ShiftError> {
    let mut out = Vec::with_capacity(sub.len() * alphabet_dim);
    for g in sub {
        let i = support.index_of(g).ok_or_else(|| ShiftError::SupportMismatch(format!("{g} not in {support}")))?;
        out.extend((0..alphabet_dim).map(|v| i * alphabet_dim + v));
    }
    Ok(out)
}

/// A finite pattern `p ∈ V^Ω`, stored element-major in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern<F: Field> {
    field: F,
    support: FiniteSubset,
    alphabet_dim: usize,
    values: Vec<F::Elem>,
}

impl<F: Field> Pattern<F> {
    pub fn new(field: F, support: FiniteSubset, alphabet_dim: usize, values: Vec<F::Elem>) -> Result<Self, ShiftError> {
        if values.len() != support.len() * alphabet_dim {
            return Err(ShiftError::SupportMismatch(format!(
                "pattern has {} values, support {} needs {}",
                values.len(),
                support,
                support.len() * alphabet_dim
            )));
        }
        for v in &values {
            field.validate(v)?;
        }
        Ok(Pattern { field, support, alphabet_dim, values })
    }

    pub fn zero(field: F, support: FiniteSubset, alphabet_dim: usize) -> Self {
        let values = vec![field.zero(); support.len() * alphabet_dim];
        Pattern { field, support, alphabet_dim, values }
    }

    /// Pattern that is `value` at `g` and zero elsewhere on `support`.
    pub fn point(field: F, support: FiniteSubset, alphabet_dim: usize, g: &GroupElement, value: Vec<F::Elem>) -> Result<Self, ShiftError> {
        let mut p = Self::zero(field, support, alphabet_dim);
        p.set(g, value)?;
        Ok(p)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn support(&self) -> &FiniteSubset {
        &self.support
    }

    pub fn alphabet_dim(&self) -> usize {
        self.alphabet_dim
    }

    pub fn values(&self) -> &[F::Elem] {
        &self.values
    }

    pub fn get(&self, g: &GroupElement) -> Option<&[F::Elem]> {
        let i = self.support.index_of(g)?;
        Some(&self.values[i * self.alphabet_dim..(i + 1) * self.alphabet_dim])
    }

    pub fn set(&mut self, g: &GroupElement, value: Vec<F::Elem>) -> Result<(), ShiftError> {
        let i = self
            .support
            .index_of(g)
            .ok_or_else(|| ShiftError::SupportMismatch(format!("{g} not in support")))?;
        if value.len() != self.alphabet_dim {
            return Err(ShiftError::AlphabetMismatch { expected: self.alphabet_dim, found: value.len() });
        }
        for (k, v) in value.into_iter().enumerate() {
            self.field.validate(&v)?;
            self.values[i * self.alphabet_dim + k] = v;
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| self.field.is_zero(v))
    }

    /// Elements where the pattern is nonzero.
    pub fn nonzero_support(&self) -> FiniteSubset {
        self.support
            .iter()
            .filter(|g| self.get(g).is_some_and(|v| v.iter().any(|x| !self.field.is_zero(x))))
            .cloned()
            .collect()
    }

    /// Restriction to `sub ⊆ support`.
    pub fn restrict(&self, sub: &FiniteSubset) -> Result<Self, ShiftError> {
        let coords = coordinates(&self.support, sub, self.alphabet_dim)?;
        let values = coords.iter().map(|&c| self.values[c].clone()).collect();
        Ok(Pattern { field: self.field.clone(), support: sub.clone(), alphabet_dim: self.alphabet_dim, values })
    }

    /// Zero-extension to a larger support.
    pub fn extend_by_zero(&self, support: &FiniteSubset) -> Result<Self, ShiftError> {
        let mut out = Self::zero(self.field.clone(), support.clone(), self.alphabet_dim);
        for g in &self.support {
            out.set(g, self.get(g).expect("own support").to_vec())?;
        }
        Ok(out)
    }

    /// The translate `g·p`, supported on `g·Ω` with `(g·p)(gh) = p(h)`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        let support = self.support.translate(g);
        let mut out = Self::zero(self.field.clone(), support, self.alphabet_dim);
        for h in &self.support {
            out.set(&g.mul(h), self.get(h).expect("own support").to_vec()).expect("translate stays in support");
        }
        out
    }

    /// Sum of two patterns on disjoint supports.
    pub fn glue(&self, other: &Self) -> Result<Self, ShiftError> {
        if !self.support.is_disjoint(&other.support) {
            return Err(ShiftError::SupportMismatch("glued supports overlap".into()));
        }
        let support = self.support.union(&other.support);
        let mut out = self.extend_by_zero(&support)?;
        for g in &other.support {
            out.set(g, other.get(g).expect("own support").to_vec())?;
        }
        Ok(out)
    }
}

/// A subspace of `V^Ω`: a support together with a canonical subspace in the
/// element-major coordinate layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternSpace<F: Field> {
    support: FiniteSubset,
    alphabet_dim: usize,
    space: Subspace<F>,
}

impl<F: Field> PatternSpace<F> {
    pub fn new(support: FiniteSubset, alphabet_dim: usize, space: Subspace<F>) -> Result<Self, ShiftError> {
        if space.ambient_dim() != support.len() * alphabet_dim {
            return Err(ShiftError::LawShape { expected: support.len() * alphabet_dim, found: space.ambient_dim() });
        }
        Ok(PatternSpace { support, alphabet_dim, space })
    }

    pub fn full(field: F, support: FiniteSubset, alphabet_dim: usize) -> Self {
        let space = Subspace::full(field, support.len() * alphabet_dim);
        PatternSpace { support, alphabet_dim, space }
    }

    pub fn zero(field: F, support: FiniteSubset, alphabet_dim: usize) -> Self {
        let space = Subspace::zero(field, support.len() * alphabet_dim);
        PatternSpace { support, alphabet_dim, space }
    }

    pub fn support(&self) -> &FiniteSubset {
        &self.support
    }

    pub fn alphabet_dim(&self) -> usize {
        self.alphabet_dim
    }

    pub fn space(&self) -> &Subspace<F> {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, p: &Pattern<F>) -> Result<bool, ShiftError> {
        if p.support() != &self.support {
            return Err(ShiftError::SupportMismatch("pattern support differs from space support".into()));
        }
        Ok(self.space.contains_vector(p.values())?)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, ShiftError> {
        if self.support != other.support {
            return Err(ShiftError::SupportMismatch("pattern spaces over different supports".into()));
        }
        Ok(other.space.contains(&self.space)?)
    }

    /// Image under restriction to `sub ⊆ support`.
    pub fn restrict(&self, sub: &FiniteSubset) -> Result<Self, ShiftError> {
        let coords = coordinates(&self.support, sub, self.alphabet_dim)?;
        Ok(PatternSpace { support: sub.clone(), alphabet_dim: self.alphabet_dim, space: self.space.restrict(&coords) })
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ShiftError> {
        if self.support != other.support {
            return Err(ShiftError::SupportMismatch("pattern spaces over different supports".into()));
        }
        Ok(PatternSpace { support: self.support.clone(), alphabet_dim: self.alphabet_dim, space: self.space.intersect(&other.space)? })
    }

    pub fn sum(&self, other: &Self) -> Result<Self, ShiftError> {
        if self.support != other.support {
            return Err(ShiftError::SupportMismatch("pattern spaces over different supports".into()));
        }
        Ok(PatternSpace { support: self.support.clone(), alphabet_dim: self.alphabet_dim, space: self.space.sum(&other.space)? })
    }

    /// Basis patterns of the space.
    pub fn basis_patterns(&self) -> Vec<Pattern<F>> {
        let field = self.space.field().clone();
        self.space
            .basis_vectors()
            .map(|v| Pattern { field: field.clone(), support: self.support.clone(), alphabet_dim: self.alphabet_dim, values: v.to_vec() })
            .collect()
    }
}
