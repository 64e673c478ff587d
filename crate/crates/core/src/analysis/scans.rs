use serde::{Deserialize, Serialize};

use crate::algebra::{image, Field};
use crate::automaton::{AutomatonError, LinearCa};
use crate::group::{FiniteSubset, GroupSpec};
use crate::shiftspace::{project, LinearSft, StabilizationPolicy};

use super::{GapDims, PatternRecord, Scale, Verdict, Witness};

/// Radii and windows examined by the scans.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scales {
    pub rmax: usize,
    pub windows: Vec<FiniteSubset>,
}

impl Scales {
    /// Radius 4 and boxes up to 8 on `ℤ`, 3 and 5 on `ℤ^d`, radius 3 and
    /// balls up to 2 on free groups.
    pub fn default_for(group: GroupSpec) -> Self {
        let (rmax, nmax) = Self::default_params(group);
        Self::new(group, rmax, nmax)
    }

    /// `(rmax, nmax)` used by [`Scales::default_for`].
    pub fn default_params(group: GroupSpec) -> (usize, usize) {
        match group {
            GroupSpec::Grid { rank: 1 } => (4, 8),
            GroupSpec::Grid { .. } => (3, 5),
            GroupSpec::Free { .. } => (3, 2),
        }
    }

    /// Boxes `1..=nmax` on grids, balls `0..=nmax` on free groups.
    pub fn new(group: GroupSpec, rmax: usize, nmax: usize) -> Self {
        let windows = match group {
            GroupSpec::Grid { .. } => (1..=nmax).map(|n| group.folner_box(n).expect("grid group")).collect(),
            GroupSpec::Free { .. } => (0..=nmax).map(|r| group.ball(r)).collect(),
        };
        Scales { rmax, windows }
    }
}

/// Searches for a nonzero finitely supported element of `X ∩ ker τ` with
/// support radius `0..=rmax`. A hit is an exact refutation of pre-injectivity.
pub fn preinjectivity_scan<F: Field>(tau: &LinearCa<F>, x: &LinearSft<F>, rmax: usize) -> Result<Verdict, AutomatonError> {
    for radius in 0..=rmax {
        if let Some(p) = tau.kernel_witness(x, radius)? {
            let trimmed = p.restrict(&p.nonzero_support())?;
            return Ok(Verdict::Refuted { witness: Witness::KernelPattern { radius, pattern: PatternRecord::from_pattern(&trimmed) }, exact: true });
        }
    }
    Ok(Verdict::VerifiedUpTo { scale: Scale::Radius { radius: rmax }, exact: true })
}

/// Compares `dim π_F(τ(X))` with `dim π_F(X)` on each window.
///
/// A gap between the image's upper bound and the source's certified lower
/// bound is an exact refutation. A gap visible only in the chain values is
/// reported as an inexact refutation when every chain converged and as
/// unconverged otherwise.
pub fn surjectivity_scan<F: Field>(tau: &LinearCa<F>, x: &LinearSft<F>, windows: &[FiniteSubset], policy: &StabilizationPolicy) -> Result<Verdict, AutomatonError> {
    let mut exact = true;
    for window in windows {
        let img = tau.image_projection(x, window, policy)?;
        let src = project(x, window, policy)?;
        let dims = GapDims { image_upper: img.upper.dim(), image_lower: img.lower.dim(), source_upper: src.upper.dim(), source_lower: src.lower.dim() };
        if dims.certified() {
            return Ok(Verdict::Refuted { witness: Witness::ProjectionGap { window: window.clone(), dims }, exact: true });
        }
        if dims.suggested() {
            if img.is_converged() && src.is_converged() {
                return Ok(Verdict::Refuted { witness: Witness::ProjectionGap { window: window.clone(), dims }, exact: false });
            }
            return Ok(Verdict::Unconverged { window: window.clone(), dims });
        }
        exact &= img.is_exact() && src.is_exact();
    }
    Ok(Verdict::VerifiedUpTo { scale: Scale::Windows { windows: windows.to_vec() }, exact })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfMap {
    pub holds: bool,
    pub exact: bool,
}

/// Whether `τ(X) ⊆ X`: every law of `X` must hold on `τ(x)`, and the law at
/// `g` reads `τ(x)` on `gD`, which depends on `x` on `gDM`.
pub fn self_map_check<F: Field>(tau: &LinearCa<F>, x: &LinearSft<F>, policy: &StabilizationPolicy) -> Result<SelfMap, AutomatonError> {
    if x.is_full_shift() {
        return Ok(SelfMap { holds: true, exact: true });
    }
    let (dm, w) = tau.window_matrix(x.window())?;
    let src = project(x, &dm, policy)?;
    if x.law().contains(&image(&w, src.upper.space())?)? {
        return Ok(SelfMap { holds: true, exact: true });
    }
    if !x.law().contains(&image(&w, src.lower.space())?)? {
        return Ok(SelfMap { holds: false, exact: true });
    }
    Ok(SelfMap { holds: false, exact: false })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurjunctivityReport {
    /// `π_F(ker τ ∩ X) = 0` on every scanned window. Certified, since the
    /// upper bound of the kernel projection is what is tested.
    pub injective_at_scale: bool,
    pub kernel_dims: Vec<usize>,
    /// Run only when injective at scale.
    pub surjectivity: Option<Verdict>,
    /// Injective at scale yet exactly non-surjective on an amenable group
    /// with `X` strongly irreducible.
    pub defect: bool,
}

/// Injective linear automata on strongly irreducible subshifts over amenable
/// groups are surjective; this checks that no scale contradicts it.
pub fn surjunctivity_check<F: Field>(
    tau: &LinearCa<F>,
    x: &LinearSft<F>,
    windows: &[FiniteSubset],
    policy: &StabilizationPolicy,
    strongly_irreducible: bool,
) -> Result<SurjunctivityReport, AutomatonError> {
    let kernel = tau.kernel_sft(x)?;
    let mut kernel_dims = Vec::with_capacity(windows.len());
    for w in windows {
        kernel_dims.push(project(&kernel, w, policy)?.upper.dim());
    }
    let injective_at_scale = kernel_dims.iter().all(|&d| d == 0);
    if !injective_at_scale {
        return Ok(SurjunctivityReport { injective_at_scale, kernel_dims, surjectivity: None, defect: false });
    }
    let surj = surjectivity_scan(tau, x, windows, policy)?;
    let defect = strongly_irreducible && tau.group().is_amenable() && surj.is_exact_refutation();
    Ok(SurjunctivityReport { injective_at_scale, kernel_dims, surjectivity: Some(surj), defect })
}
