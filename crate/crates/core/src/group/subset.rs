use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupElement;

/// A finite set of group elements, kept sorted in canonical order and
/// duplicate-free. Position in this order is the coordinate index used by
/// pattern spaces built over the set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FiniteSubset {
    elems: Vec<GroupElement>,
}

impl FiniteSubset {
    pub fn new(elems: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut elems: Vec<_> = elems.into_iter().collect();
        elems.sort();
        elems.dedup();
        FiniteSubset { elems }
    }

    pub fn singleton(g: GroupElement) -> Self {
        FiniteSubset { elems: vec![g] }
    }

    /// Grid subset from integer coordinate lists.
    pub fn grid(points: &[&[i64]]) -> Self {
        Self::new(points.iter().map(|p| GroupElement::grid(p)))
    }

    /// Subset of `ℤ` from integers.
    pub fn integers(points: impl IntoIterator<Item = i64>) -> Self {
        Self::new(points.into_iter().map(|x| GroupElement::Grid(vec![x])))
    }

    pub fn words(words: &[&str]) -> Result<Self, super::GroupError> {
        Ok(Self::new(words.iter().map(|w| GroupElement::word(w)).collect::<Result<Vec<_>, _>>()?))
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, GroupElement> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[GroupElement] {
        &self.elems
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elems.binary_search(g).is_ok()
    }

    /// Position of `g` in canonical order.
    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.elems.binary_search(g).ok()
    }

    pub fn first(&self) -> Option<&GroupElement> {
        self.elems.first()
    }

    /// `g·Ω`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        Self::new(self.elems.iter().map(|w| g.mul(w)))
    }

    /// `Ω·M = {ω m}`.
    pub fn product(&self, m: &FiniteSubset) -> Self {
        Self::new(self.elems.iter().flat_map(|w| m.iter().map(move |x| w.mul(x))))
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.elems.iter().map(GroupElement::inv))
    }

    /// The `E`-neighborhood `Ω^{+E} = Ω E⁻¹`, i.e. all `g` with `gE ∩ Ω ≠ ∅`.
    pub fn neighborhood(&self, e: &FiniteSubset) -> Self {
        self.product(&e.inverse())
    }

    /// `{g : gE ⊆ Ω}`.
    pub fn interior(&self, e: &FiniteSubset) -> Self {
        let Some(e0) = e.first() else {
            return self.clone();
        };
        let e0_inv = e0.inv();
        Self::new(
            self.elems
                .iter()
                .map(|w| w.mul(&e0_inv))
                .filter(|g| e.iter().all(|x| self.contains(&g.mul(x)))),
        )
    }

    pub fn union(&self, other: &FiniteSubset) -> Self {
        Self::new(self.elems.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &FiniteSubset) -> Self {
        FiniteSubset { elems: self.elems.iter().filter(|g| !other.contains(g)).cloned().collect() }
    }

    pub fn intersection(&self, other: &FiniteSubset) -> Self {
        FiniteSubset { elems: self.elems.iter().filter(|g| other.contains(g)).cloned().collect() }
    }

    pub fn is_subset(&self, other: &FiniteSubset) -> bool {
        self.elems.iter().all(|g| other.contains(g))
    }

    pub fn is_disjoint(&self, other: &FiniteSubset) -> bool {
        self.elems.iter().all(|g| !other.contains(g))
    }

    pub fn to_set(&self) -> BTreeSet<GroupElement> {
        self.elems.iter().cloned().collect()
    }
}

impl FromIterator<GroupElement> for FiniteSubset {
    fn from_iter<T: IntoIterator<Item = GroupElement>>(iter: T) -> Self {
        Self::new(iter)
    }
}

impl<'a> IntoIterator for &'a FiniteSubset {
    type Item = &'a GroupElement;
    type IntoIter = std::slice::Iter<'a, GroupElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.elems.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for FiniteSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elems.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteSubset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Self::new(Vec::<GroupElement>::deserialize(d)?))
    }
}
