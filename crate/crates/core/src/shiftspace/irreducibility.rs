use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{solve, Field, Matrix};
use crate::group::FiniteSubset;

use super::{coordinates, project, LinearSft, Pattern, ShiftError, StabilizationPolicy};

/// How candidate pairs `(Ω₁, Ω₂)` are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerParams {
    /// Pairs are drawn inside the ball of this radius.
    pub region_radius: usize,
    /// Random pairs tried after the singleton pairs.
    pub random_pairs: usize,
    pub max_set_size: usize,
    pub seed: u64,
}

impl Default for SamplerParams {
    fn default() -> Self {
        SamplerParams { region_radius: 3, random_pairs: 16, max_set_size: 3, seed: 0 }
    }
}

/// Dimensions observed for one pair. `union_upper < parts_lower` certifies
/// a failure of the gluing property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDims {
    pub union_upper: usize,
    pub union_lower: usize,
    pub first_upper: usize,
    pub first_lower: usize,
    pub second_upper: usize,
    pub second_lower: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IrreducibilityVerdict {
    RefutedAt { omega1: FiniteSubset, omega2: FiniteSubset, dims: PairDims, exact: bool },
    UnrefutedOn { pairs_checked: usize, region_radius: usize, seed: u64, all_exact: bool },
}

impl IrreducibilityVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, IrreducibilityVerdict::RefutedAt { .. })
    }
}

/// Searches for separated sets violating `Δ`-irreducibility.
///
/// For a linear subshift the gluing property for `(Ω₁, Ω₂)` is equivalent to
/// `dim π_{Ω₁∪Ω₂}(X) = dim π_{Ω₁}(X) + dim π_{Ω₂}(X)`. Pairs are the
/// singletons `({h}, {1})` for `h` in the region outside `Δ`, then seeded
/// random pairs satisfying `Ω₁^{+Δ} ∩ Ω₂ = ∅`.
pub fn delta_irreducibility_check<F: Field>(
    x: &LinearSft<F>,
    delta: &FiniteSubset,
    sampler: &SamplerParams,
    policy: &StabilizationPolicy,
) -> Result<IrreducibilityVerdict, ShiftError> {
    x.check_support(delta)?;
    let group = x.group();
    let region = group.ball(sampler.region_radius);
    let identity = FiniteSubset::singleton(group.identity());

    let mut pairs: Vec<(FiniteSubset, FiniteSubset)> = region
        .iter()
        .filter(|h| !delta.contains(h))
        .map(|h| (FiniteSubset::singleton(h.clone()), identity.clone()))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(sampler.seed);
    let elems: Vec<_> = region.iter().cloned().collect();
    let mut attempts = 0;
    let mut drawn = 0;
    while drawn < sampler.random_pairs && attempts < sampler.random_pairs * 20 {
        attempts += 1;
        let k1 = rng.gen_range(1..=sampler.max_set_size.max(1));
        let k2 = rng.gen_range(1..=sampler.max_set_size.max(1));
        let a = FiniteSubset::new(elems.choose_multiple(&mut rng, k1).cloned());
        let b = FiniteSubset::new(elems.choose_multiple(&mut rng, k2).cloned());
        if a.neighborhood(delta).is_disjoint(&b) {
            pairs.push((a, b));
            drawn += 1;
        }
    }

    let mut all_exact = true;
    for (a, b) in &pairs {
        let pa = project(x, a, policy)?;
        let pb = project(x, b, policy)?;
        let pu = project(x, &a.union(b), policy)?;
        let dims = PairDims {
            union_upper: pu.upper.dim(),
            union_lower: pu.lower.dim(),
            first_upper: pa.upper.dim(),
            first_lower: pa.lower.dim(),
            second_upper: pb.upper.dim(),
            second_lower: pb.lower.dim(),
        };
        let certified = dims.union_upper < dims.first_lower + dims.second_lower;
        let suggested = dims.union_upper < dims.first_upper + dims.second_upper;
        all_exact &= pa.is_exact() && pb.is_exact() && pu.is_exact();
        if certified || (suggested && pu.is_converged() && pa.is_converged() && pb.is_converged()) {
            return Ok(IrreducibilityVerdict::RefutedAt { omega1: a.clone(), omega2: b.clone(), dims, exact: certified });
        }
    }
    Ok(IrreducibilityVerdict::UnrefutedOn { pairs_checked: pairs.len(), region_radius: sampler.region_radius, seed: sampler.seed, all_exact })
}

/// A pattern on `Ω^{+M}` agreeing with `p` on `Ω` whose zero-extension lies
/// in `X`, if one exists.
///
/// For an `M`-irreducible `X` with `1 ∈ M` and `M⁻¹` a defining window, every
/// globally admissible `p` has such an extension.
pub fn zero_boundary_extension<F: Field>(x: &LinearSft<F>, p: &Pattern<F>, m: &FiniteSubset) -> Result<Option<Pattern<F>>, ShiftError> {
    let f = x.field().clone();
    let omega = p.support();
    let grown = omega.neighborhood(m).union(omega);
    let dv = x.alphabet_dim();
    let n = grown.len() * dv;

    let laws = x.law_rows(&grown, &grown.neighborhood(x.window()));
    let pin_coords = coordinates(&grown, omega, dv)?;
    let mut rows: Vec<Vec<F::Elem>> = laws.row_iter().map(|r| r.to_vec()).collect();
    let mut rhs = vec![f.zero(); rows.len()];
    for (k, &c) in pin_coords.iter().enumerate() {
        let mut r = vec![f.zero(); n];
        r[c] = f.one();
        rows.push(r);
        rhs.push(p.values()[k].clone());
    }
    let system = Matrix::from_rows(f.clone(), n, rows)?;
    Ok(solve(&system, &rhs)?.map(|values| Pattern::new(f, grown, dv, values).expect("solution has support length")))
}
