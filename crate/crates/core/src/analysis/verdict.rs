use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::automaton::{AutomatonError, LinearCa};
use crate::group::FiniteSubset;
use crate::shiftspace::{project, LinearSft, Pattern, ShiftError, StabilizationPolicy};

/// Field-agnostic form of a pattern: one row of decimal strings per element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternRecord {
    pub support: FiniteSubset,
    pub values: Vec<Vec<String>>,
}

impl PatternRecord {
    pub fn from_pattern<F: Field>(p: &Pattern<F>) -> Self {
        let f = p.field();
        let dv = p.alphabet_dim();
        let values = p.values().chunks(dv.max(1)).map(|c| c.iter().map(|v| f.format(v)).collect()).collect();
        PatternRecord { support: p.support().clone(), values }
    }

    pub fn to_pattern<F: Field>(&self, field: &F, alphabet_dim: usize) -> Result<Pattern<F>, ShiftError> {
        if self.values.len() != self.support.len() {
            return Err(ShiftError::SupportMismatch(format!("{} value rows for {} elements", self.values.len(), self.support.len())));
        }
        let mut flat = Vec::with_capacity(self.support.len() * alphabet_dim);
        for row in &self.values {
            if row.len() != alphabet_dim {
                return Err(ShiftError::AlphabetMismatch { expected: alphabet_dim, found: row.len() });
            }
            for s in row {
                flat.push(field.parse(s)?);
            }
        }
        Pattern::new(field.clone(), self.support.clone(), alphabet_dim, flat)
    }
}

/// Dimensions compared on one window by the surjectivity scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapDims {
    pub image_upper: usize,
    pub image_lower: usize,
    pub source_upper: usize,
    pub source_lower: usize,
}

impl GapDims {
    /// `dim π_F(τ(X)) < dim π_F(X)` is certain.
    pub fn certified(&self) -> bool {
        self.image_upper < self.source_lower
    }

    /// The chain values show a gap.
    pub fn suggested(&self) -> bool {
        self.image_upper < self.source_upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A nonzero finitely supported configuration of `X` killed by `τ`.
    KernelPattern { radius: usize, pattern: PatternRecord },
    /// A window on which the image has smaller projection than `X`.
    ProjectionGap { window: FiniteSubset, dims: GapDims },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Scale {
    Radius { radius: usize },
    Windows { windows: Vec<FiniteSubset> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Refuted { witness: Witness, exact: bool },
    VerifiedUpTo { scale: Scale, exact: bool },
    Unconverged { window: FiniteSubset, dims: GapDims },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn is_exact_refutation(&self) -> bool {
        matches!(self, Verdict::Refuted { exact: true, .. })
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, Verdict::VerifiedUpTo { .. })
    }

    pub fn exact(&self) -> bool {
        match self {
            Verdict::Refuted { exact, .. } | Verdict::VerifiedUpTo { exact, .. } => *exact,
            Verdict::Unconverged { .. } => false,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted { witness, .. } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Refuted { .. } => "refuted",
            Verdict::VerifiedUpTo { .. } => "verified_up_to",
            Verdict::Unconverged { .. } => "unconverged",
        }
    }
}

/// Recomputes a witness from scratch and checks that it still refutes.
pub fn replay_witness<F: Field>(tau: &LinearCa<F>, x: &LinearSft<F>, witness: &Witness, policy: &StabilizationPolicy) -> Result<bool, AutomatonError> {
    match witness {
        Witness::KernelPattern { pattern, .. } => {
            let p = pattern.to_pattern(tau.field(), tau.alphabet_dim())?;
            tau.is_kernel_witness(x, &p)
        }
        Witness::ProjectionGap { window, dims } => {
            let img = tau.image_projection(x, window, policy)?;
            let src = project(x, window, policy)?;
            let again = GapDims { image_upper: img.upper.dim(), image_lower: img.lower.dim(), source_upper: src.upper.dim(), source_lower: src.lower.dim() };
            Ok(again == *dims && again.suggested())
        }
    }
}
