use super::{FiniteSubset, GroupElement, GroupError};

/// Greedy finite-region tiling.
///
/// Scans `region` in canonical order and keeps `g` whenever `gE` misses every
/// previously kept translate. The result is a maximal family with pairwise
/// disjoint translates, so every scanned `g` lies in `tEE⁻¹` for some kept
/// `t`: the translates `tF`, `F = EE⁻¹`, cover the whole region.
pub fn greedy_tiling(e: &FiniteSubset, region: &FiniteSubset) -> Result<FiniteSubset, GroupError> {
    if e.is_empty() {
        return Err(GroupError::EmptySet("tile shape E"));
    }
    let mut occupied = std::collections::HashSet::new();
    let mut centers = Vec::new();
    for g in region {
        let tile: Vec<GroupElement> = e.iter().map(|x| g.mul(x)).collect();
        if tile.iter().all(|x| !occupied.contains(x)) {
            occupied.extend(tile);
            centers.push(g.clone());
        }
    }
    Ok(FiniteSubset::new(centers))
}

/// `F = EE⁻¹`, the covering shape paired with a tile shape `E`.
pub fn covering_shape(e: &FiniteSubset) -> FiniteSubset {
    e.product(&e.inverse())
}

/// First pair of centers whose translates `gE` overlap, if any.
pub fn overlapping_pair(tiles: &FiniteSubset, e: &FiniteSubset) -> Option<(GroupElement, GroupElement)> {
    let list = tiles.as_slice();
    for (i, g) in list.iter().enumerate() {
        let ge = e.translate(g);
        for h in &list[i + 1..] {
            if !ge.is_disjoint(&e.translate(h)) {
                return Some((g.clone(), h.clone()));
            }
        }
    }
    None
}

/// Elements `g` of the region interior `{g : gF ⊆ region}` not covered by
/// `⋃_{t ∈ T} tF`.
pub fn uncovered_interior(tiles: &FiniteSubset, f: &FiniteSubset, region: &FiniteSubset) -> FiniteSubset {
    let covered = tiles.product(f);
    region.interior(f).difference(&covered)
}

/// `T_n = {g ∈ T : gE ⊆ window}`.
pub fn tiles_inside(tiles: &FiniteSubset, e: &FiniteSubset, window: &FiniteSubset) -> FiniteSubset {
    FiniteSubset::new(tiles.iter().filter(|g| e.translate(g).is_subset(window)).cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn one_dimensional_domino() {
        let z = GroupSpec::Grid { rank: 1 };
        let e = FiniteSubset::integers([0, 1]);
        let region = z.folner_box(6).unwrap();
        let t = greedy_tiling(&e, &region).unwrap();
        assert_eq!(t, FiniteSubset::integers([0, 2, 4]));
        let f = covering_shape(&e);
        assert_eq!(f, FiniteSubset::integers([-1, 0, 1]));
        assert!(overlapping_pair(&t, &e).is_none());
        assert!(uncovered_interior(&t, &f, &region).is_empty());
    }

    #[test]
    fn singleton_tile_takes_everything() {
        let z2 = GroupSpec::Grid { rank: 2 };
        let region = z2.folner_box(3).unwrap();
        let t = greedy_tiling(&FiniteSubset::singleton(z2.identity()), &region).unwrap();
        assert_eq!(t, region);
    }

    #[test]
    fn empty_tile_rejected() {
        let region = FiniteSubset::integers(0..3);
        assert!(matches!(greedy_tiling(&FiniteSubset::default(), &region), Err(GroupError::EmptySet(_))));
    }
}
