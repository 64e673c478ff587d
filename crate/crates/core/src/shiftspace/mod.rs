//! Linear subshifts of finite type, admissible pattern spaces, projections
//! `π_F(X)`, Δ-irreducibility testing and mean-dimension profiles.

mod irreducibility;
mod pattern;
mod projection;
mod sft;

use num_rational::Ratio;
use serde::Serialize;

use crate::algebra::{AlgebraError, Field};
use crate::group::GroupError;

pub use irreducibility::{delta_irreducibility_check, zero_boundary_extension, IrreducibilityVerdict, PairDims, SamplerParams};
pub use pattern::{coordinates, Pattern, PatternSpace};
pub use projection::{periodic_bound, project, ChainStatus, Projection, StabilizationMode, StabilizationPolicy};
pub use sft::LinearSft;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShiftError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("law has ambient dimension {found}, window needs {expected}")]
    LawShape { expected: usize, found: usize },
    #[error("alphabet dimension {found}, expected {expected}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("{0} must be nonempty")]
    EmptySet(&'static str),
    #[error("element does not belong to the group: {0}")]
    ForeignElement(String),
    #[error("support mismatch: {0}")]
    SupportMismatch(String),
    #[error("fixpoint_1d mode requires the group Z")]
    NeedsRankOne,
    #[error("projection chain increased at round {round}")]
    ChainNotMonotone { round: usize },
}

/// One row of a mean-dimension profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileEntry {
    pub n: usize,
    pub window_size: usize,
    pub dim: usize,
    /// `dim / |box(n)|`, reduced.
    #[serde(serialize_with = "ratio_string")]
    pub ratio: Ratio<u64>,
    pub exact: bool,
}

pub(crate) fn ratio_string<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    if *r.denom() == 1 {
        s.serialize_str(&r.numer().to_string())
    } else {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }
}

/// `dim π_{box(n)}(X) / n^d` for `n = 1..=n_max`. No limit is claimed.
pub fn mean_dimension_profile<F: Field>(x: &LinearSft<F>, n_max: usize, policy: &StabilizationPolicy) -> Result<Vec<ProfileEntry>, ShiftError> {
    let group = x.group();
    (1..=n_max)
        .map(|n| {
            let window = group.folner_box(n)?;
            let p = project(x, &window, policy)?;
            Ok(ProfileEntry {
                n,
                window_size: window.len(),
                dim: p.dim(),
                ratio: Ratio::new(p.dim() as u64, window.len() as u64),
                exact: p.is_exact(),
            })
        })
        .collect()
}
