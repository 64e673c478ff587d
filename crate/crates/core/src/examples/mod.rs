//! Constructions of the standard examples and counterexamples, with the
//! verdicts each one is expected to produce.

mod preimage;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Matrix, Subspace};
use crate::analysis::{preinjectivity_scan, surjectivity_scan, PatternRecord, Scales, Verdict, Witness};
use crate::automaton::{AutomatonError, LinearCa};
use crate::group::{FiniteSubset, GroupElement, GroupError, GroupSpec};
use crate::shiftspace::{delta_irreducibility_check, mean_dimension_profile, IrreducibilityVerdict, LinearSft, ProfileEntry, SamplerParams, ShiftError, StabilizationPolicy};

pub use preimage::{prop81_preimage, prop81_valid_region};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExampleError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("input support is not a ball of the free group of rank 2: {0}")]
    NotABall(String),
    #[error("sublattice generator {0} is zero or repeated")]
    BadGenerator(String),
    #[error("unknown example {0:?}")]
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedVerdict {
    Refuted,
    VerifiedUpTo,
}

impl ExpectedVerdict {
    fn matches(self, v: &Verdict) -> bool {
        match self {
            ExpectedVerdict::Refuted => v.is_refuted(),
            ExpectedVerdict::VerifiedUpTo => v.is_verified(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedGap {
    pub window: FiniteSubset,
    pub image_dim: usize,
    pub source_dim: usize,
}

/// What running an example must produce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRecord {
    pub preinjective: ExpectedVerdict,
    pub surjective: ExpectedVerdict,
    pub surjectivity_gap: Option<ExpectedGap>,
    pub kernel_witness: Option<PatternRecord>,
    /// `dim π_{box(n)}(X)` for `n = 1, 2, …`.
    pub profile_dims: Option<Vec<usize>>,
    /// Δ-irreducibility is refuted for `Δ` = balls of radius 1 and 2.
    pub irreducibility_refuted: Option<bool>,
    /// The claim being reproduced, in words.
    pub citation: String,
}

#[derive(Debug, Clone)]
pub struct NamedExample<F: Field> {
    pub name: &'static str,
    pub subshift: LinearSft<F>,
    pub automaton: LinearCa<F>,
    pub strongly_irreducible: bool,
    pub expected: ExpectedRecord,
}

impl<F: Field> NamedExample<F> {
    pub fn group(&self) -> GroupSpec {
        self.automaton.group()
    }

    pub fn field(&self) -> &F {
        self.automaton.field()
    }
}

fn block<F: Field>(field: &F, rows: &[&[i64]]) -> Matrix<F> {
    Matrix::from_i64(field.clone(), rows)
}

fn free_memory() -> FiniteSubset {
    FiniteSubset::words(&["a", "A", "b", "B"]).expect("valid words")
}

/// `τ(x)(g) = p₁(x(ga)) + p₂(x(gb)) + p₁(x(ga⁻¹)) + p₂(x(gb⁻¹))` on `F₂`, with
/// `p₁(λ₁,λ₂) = (λ₁,0)` and `p₂(λ₁,λ₂) = (λ₂,0)`.
pub fn prop71_automaton<F: Field>(field: F) -> NamedExample<F> {
    let group = GroupSpec::f2();
    let p1 = block(&field, &[&[1, 0], &[0, 0]]);
    let p2 = block(&field, &[&[0, 1], &[0, 0]]);
    // canonical order a, A, b, B
    let tau = LinearCa::new(field.clone(), group, 2, free_memory(), vec![p1.clone(), p1, p2.clone(), p2]).expect("well formed");
    NamedExample {
        name: "prop71",
        subshift: LinearSft::full(field, group, 2),
        automaton: tau,
        strongly_irreducible: true,
        expected: ExpectedRecord {
            preinjective: ExpectedVerdict::VerifiedUpTo,
            surjective: ExpectedVerdict::Refuted,
            surjectivity_gap: Some(ExpectedGap { window: FiniteSubset::singleton(group.identity()), image_dim: 1, source_dim: 2 }),
            kernel_witness: None,
            profile_dims: None,
            irreducibility_refuted: None,
            citation: "free group of rank 2, dim V = 2: τ(V^G) ⊂ (K×{0})^G so τ is not surjective, yet τ is pre-injective".into(),
        },
    }
}

/// `τ(x)(g) = q₁(x(ga)) + q₁(x(ga⁻¹)) + q₂(x(gb)) + q₂(x(gb⁻¹))` on `F₂`, with
/// `q₁(λ₁,λ₂) = (λ₁,0)` and `q₂(λ₁,λ₂) = (0,λ₁)`.
pub fn prop81_automaton<F: Field>(field: F) -> NamedExample<F> {
    let group = GroupSpec::f2();
    let q1 = block(&field, &[&[1, 0], &[0, 0]]);
    let q2 = block(&field, &[&[0, 0], &[1, 0]]);
    let tau = LinearCa::new(field.clone(), group, 2, free_memory(), vec![q1.clone(), q1, q2.clone(), q2]).expect("well formed");
    let witness = PatternRecord { support: FiniteSubset::singleton(group.identity()), values: vec![vec![field.format(&field.zero()), field.format(&field.one())]] };
    NamedExample {
        name: "prop81",
        subshift: LinearSft::full(field, group, 2),
        automaton: tau,
        strongly_irreducible: true,
        expected: ExpectedRecord {
            preinjective: ExpectedVerdict::Refuted,
            surjective: ExpectedVerdict::VerifiedUpTo,
            surjectivity_gap: None,
            kernel_witness: Some(witness),
            profile_dims: None,
            irreducibility_refuted: None,
            citation: "free group of rank 2, dim V = 2: the configuration equal to (0,1) at 1_G and zero elsewhere lies in the kernel, yet τ is surjective".into(),
        },
    }
}

/// Configurations constant on each coset of the subgroup `H` generated by
/// `sublattice_basis`: window `{0} ∪ basis`, law "all values equal".
pub fn coset_constant_subshift<F: Field>(field: F, group: GroupSpec, alphabet_dim: usize, sublattice_basis: &[Vec<i64>]) -> Result<LinearSft<F>, ExampleError> {
    let GroupSpec::Grid { rank } = group else {
        return Err(GroupError::NotAmenable("coset-constant subshifts").into());
    };
    let zero = GroupElement::Grid(vec![0; rank]);
    let mut window = vec![zero.clone()];
    for v in sublattice_basis {
        let g = GroupElement::Grid(v.clone());
        if !group.contains(&g) {
            return Err(ShiftError::ForeignElement(format!("{g} in {group}")).into());
        }
        if window.contains(&g) {
            return Err(ExampleError::BadGenerator(g.to_string()));
        }
        window.push(g);
    }
    let window = FiniteSubset::new(window);
    let n = window.len() * alphabet_dim;
    let constants = (0..alphabet_dim)
        .map(|v| (0..n).map(|c| if c % alphabet_dim == v { field.one() } else { field.zero() }).collect())
        .collect();
    let law = Subspace::span(field, n, constants).map_err(ShiftError::from)?;
    Ok(LinearSft::new(group, alphabet_dim, window, law)?)
}

fn zero_ca_example<F: Field>(field: F, name: &'static str, group: GroupSpec, basis: &[Vec<i64>], profile: usize, citation: &str) -> NamedExample<F> {
    let x = coset_constant_subshift(field.clone(), group, 1, basis).expect("valid basis");
    NamedExample {
        name,
        subshift: x,
        automaton: LinearCa::zero(field, group, 1),
        strongly_irreducible: false,
        expected: ExpectedRecord {
            preinjective: ExpectedVerdict::VerifiedUpTo,
            surjective: ExpectedVerdict::Refuted,
            surjectivity_gap: Some(ExpectedGap { window: group.folner_box(1).expect("grid"), image_dim: 0, source_dim: 1 }),
            kernel_witness: None,
            profile_dims: Some((1..=profile).collect()),
            irreducibility_refuted: Some(true),
            citation: citation.into(),
        },
    }
}

/// Every registered example over `field`.
pub fn list_examples<F: Field>(field: F) -> Vec<NamedExample<F>> {
    vec![
        prop71_automaton(field.clone()),
        prop81_automaton(field.clone()),
        zero_ca_example(
            field.clone(),
            "horizontal-z2",
            GroupSpec::z2(),
            &[vec![1, 0]],
            6,
            "Z^2, configurations constant on each horizontal line: dim π_{F_n}(X) = n dim V, mean dimension 0; the zero automaton is pre-injective but not surjective and X is not strongly irreducible",
        ),
        zero_ca_example(
            field,
            "constants-z",
            GroupSpec::z(),
            &[vec![1]],
            1,
            "Z, constant configurations (H = G): the zero automaton is pre-injective but not surjective and X is not strongly irreducible",
        ),
    ]
}

pub fn example_by_name<F: Field>(field: F, name: &str) -> Result<NamedExample<F>, ExampleError> {
    list_examples(field).into_iter().find(|e| e.name == name).ok_or_else(|| ExampleError::Unknown(name.to_string()))
}

/// Verdicts produced by [`run_example`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExampleRun {
    pub preinj: Verdict,
    pub surj: Verdict,
    pub profile: Option<Vec<ProfileEntry>>,
    /// `(radius of Δ, verdict)`.
    pub irreducibility: Vec<(usize, IrreducibilityVerdict)>,
}

pub fn run_example<F: Field>(ex: &NamedExample<F>, scales: &Scales, policy: &StabilizationPolicy) -> Result<ExampleRun, ExampleError> {
    let tau = &ex.automaton;
    let x = &ex.subshift;
    let preinj = preinjectivity_scan(tau, x, scales.rmax)?;
    let surj = surjectivity_scan(tau, x, &scales.windows, policy)?;
    let profile = match &ex.expected.profile_dims {
        Some(d) => Some(mean_dimension_profile(x, d.len(), policy)?),
        None => None,
    };
    let irreducibility = match ex.expected.irreducibility_refuted {
        Some(_) => [1, 2]
            .into_iter()
            .map(|r| Ok((r, delta_irreducibility_check(x, &ex.group().ball(r), &SamplerParams::default(), policy)?)))
            .collect::<Result<_, ShiftError>>()?,
        None => Vec::new(),
    };
    Ok(ExampleRun { preinj, surj, profile, irreducibility })
}

/// Mismatches between a run and the expected record; empty when they agree.
pub fn diff_expected(expected: &ExpectedRecord, run: &ExampleRun) -> Vec<String> {
    let mut out = Vec::new();
    if !expected.preinjective.matches(&run.preinj) {
        out.push(format!("pre-injectivity: expected {:?}, got {}", expected.preinjective, run.preinj.label()));
    }
    if !expected.surjective.matches(&run.surj) {
        out.push(format!("surjectivity: expected {:?}, got {}", expected.surjective, run.surj.label()));
    }
    if let Some(gap) = &expected.surjectivity_gap {
        match run.surj.witness() {
            Some(Witness::ProjectionGap { window, dims }) if *window == gap.window && dims.image_upper == gap.image_dim && dims.source_lower == gap.source_dim && dims.source_upper == gap.source_dim => {}
            other => out.push(format!("surjectivity gap: expected {} vs {} on {}, got {other:?}", gap.image_dim, gap.source_dim, gap.window)),
        }
    }
    if let Some(w) = &expected.kernel_witness {
        match run.preinj.witness() {
            Some(Witness::KernelPattern { pattern, .. }) if pattern == w => {}
            other => out.push(format!("kernel witness: expected {w:?}, got {other:?}")),
        }
    }
    if let Some(dims) = &expected.profile_dims {
        let got: Option<Vec<usize>> = run.profile.as_ref().map(|p| p.iter().map(|e| e.dim).collect());
        if got.as_ref() != Some(dims) {
            out.push(format!("profile: expected {dims:?}, got {got:?}"));
        }
    }
    if let Some(refuted) = expected.irreducibility_refuted {
        for (r, v) in &run.irreducibility {
            if v.is_refuted() != refuted {
                out.push(format!("irreducibility for ball({r}): expected refuted = {refuted}, got {v:?}"));
            }
        }
    }
    out
}
