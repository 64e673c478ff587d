use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// One letter of a free-group word: generator index plus orientation.
///
/// Letters order as `a < A < b < B < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: u8, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + self.generator) as char;
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new(c as u8 - b'a', false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new(c.to_ascii_lowercase() as u8 - b'a', true))
        } else {
            None
        }
    }
}

/// An element of `ℤ^d` or of a free group.
///
/// Free words are always freely reduced. The canonical order is
/// lexicographic on coordinates for grid elements and length-then-lexicographic
/// for words; it fixes the coordinate layout of every pattern space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupElement {
    Grid(Vec<i64>),
    Free(Vec<Letter>),
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (GroupElement::Grid(a), GroupElement::Grid(b)) => a.cmp(b),
            (GroupElement::Free(a), GroupElement::Free(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (GroupElement::Grid(_), GroupElement::Free(_)) => Ordering::Less,
            (GroupElement::Free(_), GroupElement::Grid(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn reduce(letters: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

impl GroupElement {
    pub fn grid(coords: &[i64]) -> Self {
        GroupElement::Grid(coords.to_vec())
    }

    /// Parses a word such as `"abA"`; the result is freely reduced. `"1"`
    /// and `""` are the identity.
    pub fn word(s: &str) -> Result<Self, GroupError> {
        if s == "1" {
            return Ok(GroupElement::Free(Vec::new()));
        }
        let letters = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| GroupError::InvalidElement(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement::Free(reduce(letters)))
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Grid(v) => v.iter().all(|&x| x == 0),
            GroupElement::Free(w) => w.is_empty(),
        }
    }

    /// Group product `self · other`.
    ///
    /// # Panics
    /// If the two elements belong to different kinds of group.
    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (GroupElement::Grid(a), GroupElement::Grid(b)) => {
                assert_eq!(a.len(), b.len(), "grid rank mismatch");
                GroupElement::Grid(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (GroupElement::Free(a), GroupElement::Free(b)) => {
                GroupElement::Free(reduce(a.iter().chain(b.iter()).copied()))
            }
            _ => panic!("cannot multiply elements of different groups"),
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            GroupElement::Grid(a) => GroupElement::Grid(a.iter().map(|x| -x).collect()),
            GroupElement::Free(w) => GroupElement::Free(w.iter().rev().map(|l| l.inv()).collect()),
        }
    }

    /// Word length for free elements, L1 norm for grid elements.
    pub fn length(&self) -> usize {
        match self {
            GroupElement::Grid(a) => a.iter().map(|x| x.unsigned_abs() as usize).sum(),
            GroupElement::Free(w) => w.len(),
        }
    }

    pub fn letters(&self) -> Option<&[Letter]> {
        match self {
            GroupElement::Free(w) => Some(w),
            GroupElement::Grid(_) => None,
        }
    }

    pub fn coords(&self) -> Option<&[i64]> {
        match self {
            GroupElement::Grid(a) => Some(a),
            GroupElement::Free(_) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Grid(a) => {
                write!(f, "(")?;
                for (i, x) in a.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            GroupElement::Free(w) if w.is_empty() => write!(f, "1"),
            GroupElement::Free(w) => {
                for l in w {
                    write!(f, "{}", l.to_char())?;
                }
                Ok(())
            }
        }
    }
}

/// JSON form: grid elements are integer arrays, words are strings with
/// uppercase letters for inverses.
impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupElement::Grid(a) => a.serialize(s),
            GroupElement::Free(w) => w.iter().map(|l| l.to_char()).collect::<String>().serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Grid(Vec<i64>),
            Word(String),
        }
        match Raw::deserialize(d)? {
            Raw::Grid(v) => Ok(GroupElement::Grid(v)),
            Raw::Word(s) => GroupElement::word(&s).map_err(serde::de::Error::custom),
        }
    }
}
