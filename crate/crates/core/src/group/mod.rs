//! Groups `ℤ^d` and free groups `F_k`: elements, finite subsets,
//! neighborhoods, balls, Følner boxes and greedy tilings.

mod element;
mod subset;
mod tiling;

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub use element::{GroupElement, Letter};
pub use subset::FiniteSubset;
pub use tiling::{covering_shape, greedy_tiling, overlapping_pair, tiles_inside, uncovered_interior};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("{0} is not available on free groups (not amenable)")]
    NotAmenable(&'static str),
    #[error("{0} requires a rank-1 grid group")]
    NeedsRankOne(&'static str),
    #[error("{0} must be nonempty")]
    EmptySet(&'static str),
    #[error("invalid group element {0}")]
    InvalidElement(String),
    #[error("group rank must be at least 1")]
    ZeroRank,
    #[error("unknown group {0:?}; expected Z, Z^d or Fk")]
    UnknownGroup(String),
}

/// The ambient group: `ℤ^rank` or the free group of the given rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Grid { rank: usize },
    Free { rank: usize },
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Grid { rank: 1 } => write!(f, "Z"),
            GroupSpec::Grid { rank } => write!(f, "Z^{rank}"),
            GroupSpec::Free { rank } => write!(f, "F{rank}"),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = GroupError;

    /// Accepts `Z`, `Z^d`, `Zd`, `Fk`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let t = s.trim();
        let bad = || GroupError::UnknownGroup(s.to_string());
        let (kind, rest) = t.split_at(1.min(t.len()));
        let rank = match rest.trim_start_matches('^') {
            "" => 1,
            r => r.parse().map_err(|_| bad())?,
        };
        let g = match kind {
            "Z" | "z" => GroupSpec::Grid { rank },
            "F" | "f" => GroupSpec::Free { rank },
            _ => return Err(bad()),
        };
        g.check()?;
        Ok(g)
    }
}

impl GroupSpec {
    pub fn z() -> Self {
        GroupSpec::Grid { rank: 1 }
    }

    pub fn z2() -> Self {
        GroupSpec::Grid { rank: 2 }
    }

    pub fn f2() -> Self {
        GroupSpec::Free { rank: 2 }
    }

    pub fn rank(&self) -> usize {
        match *self {
            GroupSpec::Grid { rank } | GroupSpec::Free { rank } => rank,
        }
    }

    pub fn check(&self) -> Result<(), GroupError> {
        match *self {
            GroupSpec::Grid { rank: 0 } | GroupSpec::Free { rank: 0 } => Err(GroupError::ZeroRank),
            GroupSpec::Free { rank } if rank > 26 => {
                Err(GroupError::InvalidElement(format!("free rank {rank} exceeds 26 letters")))
            }
            _ => Ok(()),
        }
    }

    pub fn is_amenable(&self) -> bool {
        match *self {
            GroupSpec::Grid { .. } => true,
            // F_1 ≅ ℤ, but boxes are only provided for grids
            GroupSpec::Free { rank } => rank < 2,
        }
    }

    pub fn identity(&self) -> GroupElement {
        match *self {
            GroupSpec::Grid { rank } => GroupElement::Grid(vec![0; rank]),
            GroupSpec::Free { .. } => GroupElement::Free(Vec::new()),
        }
    }

    /// Standard symmetric generating set (generators and their inverses).
    pub fn generators(&self) -> Vec<GroupElement> {
        match *self {
            GroupSpec::Grid { rank } => (0..rank)
                .flat_map(|i| {
                    [1, -1].into_iter().map(move |s| {
                        let mut v = vec![0; rank];
                        v[i] = s;
                        GroupElement::Grid(v)
                    })
                })
                .collect(),
            GroupSpec::Free { rank } => (0..rank as u8)
                .flat_map(|i| [false, true].into_iter().map(move |inv| GroupElement::Free(vec![Letter::new(i, inv)])))
                .collect(),
        }
    }

    /// Checks that `g` belongs to this group.
    pub fn contains(&self, g: &GroupElement) -> bool {
        match (self, g) {
            (GroupSpec::Grid { rank }, GroupElement::Grid(v)) => v.len() == *rank,
            (GroupSpec::Free { rank }, GroupElement::Free(w)) => {
                w.iter().all(|l| (l.generator as usize) < *rank) && w.windows(2).all(|p| p[0] != p[1].inv())
            }
            _ => false,
        }
    }

    /// Word-metric ball of radius `r` for the standard generators (the L1
    /// ball on grids).
    pub fn ball(&self, r: usize) -> FiniteSubset {
        let gens = self.generators();
        let mut seen = std::collections::HashSet::new();
        let mut frontier = vec![self.identity()];
        seen.insert(self.identity());
        for _ in 0..r {
            let mut next = Vec::new();
            for g in &frontier {
                for s in &gens {
                    let h = g.mul(s);
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            frontier = next;
        }
        FiniteSubset::new(seen)
    }

    /// The Følner box `{0,…,n−1}^d`.
    pub fn folner_box(&self, n: usize) -> Result<FiniteSubset, GroupError> {
        let GroupSpec::Grid { rank } = *self else {
            return Err(GroupError::NotAmenable("Følner boxes"));
        };
        Ok(grid_cube(rank, 0, n as i64 - 1))
    }

    /// The cube `{−r,…,r}^d` on grids, the ball of radius `r` on free groups.
    /// Used as the search region for finitely supported witnesses.
    pub fn witness_region(&self, r: usize) -> FiniteSubset {
        match *self {
            GroupSpec::Grid { rank } => grid_cube(rank, -(r as i64), r as i64),
            GroupSpec::Free { .. } => self.ball(r),
        }
    }

    /// Følner ratio `|B^{+E} ∖ B| / |B|` for `B = box(n)`, `n ≥ 1`.
    pub fn folner_ratio(&self, n: usize, e: &FiniteSubset) -> Result<Ratio<u64>, GroupError> {
        let b = self.folner_box(n)?;
        if b.is_empty() {
            return Err(GroupError::EmptySet("Følner box"));
        }
        let boundary = b.neighborhood(e).difference(&b);
        Ok(Ratio::new(boundary.len() as u64, b.len() as u64))
    }
}

fn grid_cube(rank: usize, lo: i64, hi: i64) -> FiniteSubset {
    if lo > hi {
        return FiniteSubset::default();
    }
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..rank {
        points = points
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    FiniteSubset::new(points.into_iter().map(GroupElement::Grid))
}
