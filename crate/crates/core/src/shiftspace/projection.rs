//! Globally admissible patterns `π_F(X)`.
//!
//! The chain `W_k` = restriction to `F` of the locally admissible patterns on
//! growing neighborhoods `E_k` of `F` is non-increasing and its intersection is
//! `π_F(X)`. Being a chain of finite-dimensional subspaces it stabilizes, but
//! no bound on the stabilization index is available in general, so each
//! result carries an upper bound (the chain value), a certified lower bound
//! (patterns that provably extend), and a status. When the two bounds agree
//! the result is exact regardless of how the chain stopped.

use serde::{Deserialize, Serialize};

use crate::algebra::{kernel, Field, Matrix, Subspace};
use crate::group::{FiniteSubset, GroupElement, GroupSpec};

use super::{coordinates, LinearSft, PatternSpace, ShiftError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilizationMode {
    /// Stop after `plateau_witness` consecutive equal chain steps.
    Plateau,
    /// `ℤ` only: iterate the edge-subspace operator to its fixpoint (exact).
    Fixpoint1d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StabilizationPolicy {
    pub plateau_witness: usize,
    pub max_rounds: usize,
    /// Largest chain region, in group elements, before giving up as unconverged.
    #[serde(default = "default_max_region")]
    pub max_region: usize,
    pub mode: StabilizationMode,
}

fn default_max_region() -> usize {
    512
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy { plateau_witness: 3, max_rounds: 24, max_region: default_max_region(), mode: StabilizationMode::Plateau }
    }
}

impl StabilizationPolicy {
    pub fn plateau(plateau_witness: usize) -> Self {
        StabilizationPolicy { plateau_witness: plateau_witness.max(1), ..Self::default() }
    }

    pub fn fixpoint_1d() -> Self {
        StabilizationPolicy { mode: StabilizationMode::Fixpoint1d, ..Self::default() }
    }

    /// Fixpoint mode on `ℤ`, plateau elsewhere.
    pub fn for_group(group: GroupSpec) -> Self {
        match group {
            GroupSpec::Grid { rank: 1 } => Self::fixpoint_1d(),
            _ => Self::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainStatus {
    /// One-dimensional fixpoint reached; exact by construction.
    Fixpoint,
    /// Plateau of the required length observed.
    Plateau,
    /// Round budget exhausted before a plateau.
    Unconverged,
}

/// Result of a projection: `lower ⊆ π_F(X) ⊆ upper`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projection<F: Field> {
    pub upper: PatternSpace<F>,
    pub lower: PatternSpace<F>,
    pub status: ChainStatus,
    pub rounds: usize,
}

impl<F: Field> Projection<F> {
    pub fn exact(space: PatternSpace<F>, status: ChainStatus, rounds: usize) -> Self {
        Projection { lower: space.clone(), upper: space, status, rounds }
    }

    /// The chain value, an upper bound for `π_F(X)`.
    pub fn space(&self) -> &PatternSpace<F> {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.upper.dim()
    }

    pub fn is_exact(&self) -> bool {
        self.status == ChainStatus::Fixpoint || self.lower == self.upper
    }

    pub fn is_converged(&self) -> bool {
        self.status != ChainStatus::Unconverged || self.is_exact()
    }

    pub fn support(&self) -> &FiniteSubset {
        self.upper.support()
    }
}

/// `π_F(X)` under the given policy.
pub fn project<F: Field>(x: &LinearSft<F>, target: &FiniteSubset, policy: &StabilizationPolicy) -> Result<Projection<F>, ShiftError> {
    if target.is_empty() {
        return Err(ShiftError::EmptySet("projection window"));
    }
    x.check_support(target)?;
    match policy.mode {
        StabilizationMode::Fixpoint1d => project_1d(x, target),
        StabilizationMode::Plateau => project_plateau(x, target, policy),
    }
}

fn project_plateau<F: Field>(x: &LinearSft<F>, target: &FiniteSubset, policy: &StabilizationPolicy) -> Result<Projection<F>, ShiftError> {
    let grow = x.window().inverse().product(x.window());
    let mut region = target.clone();
    let mut current = x.locally_admissible(&region)?.restrict(target)?;

    let early = finitely_supported_bound(x, &region, target)?;
    if early == current {
        return Ok(Projection::exact(current, ChainStatus::Plateau, 0));
    }

    let witness = policy.plateau_witness.max(1);
    let mut equal_run = 0;
    let mut rounds = 0;
    let mut status = ChainStatus::Unconverged;
    while rounds < policy.max_rounds {
        if current.dim() == 0 {
            // zero is a lower bound too
            return Ok(Projection::exact(current, ChainStatus::Plateau, rounds));
        }
        let grown = region.product(&grow);
        if grown.len() > policy.max_region {
            break;
        }
        region = grown;
        let next = x.locally_admissible(&region)?.restrict(target)?;
        rounds += 1;
        if !next.is_subspace_of(&current)? {
            return Err(ShiftError::ChainNotMonotone { round: rounds });
        }
        if next == current {
            equal_run += 1;
        } else {
            equal_run = 0;
        }
        current = next;
        if equal_run >= witness {
            status = ChainStatus::Plateau;
            break;
        }
    }

    let lower = certified_lower_bound(x, &region, target, &current)?;
    Ok(Projection { upper: current, lower, status, rounds })
}

/// Restriction to `target` of the patterns on `region` whose zero-extension
/// lies in `X`.
fn finitely_supported_bound<F: Field>(x: &LinearSft<F>, region: &FiniteSubset, target: &FiniteSubset) -> Result<PatternSpace<F>, ShiftError> {
    x.finitely_supported(region)?.restrict(target)
}

fn certified_lower_bound<F: Field>(
    x: &LinearSft<F>,
    region: &FiniteSubset,
    target: &FiniteSubset,
    upper: &PatternSpace<F>,
) -> Result<PatternSpace<F>, ShiftError> {
    let mut lower = finitely_supported_bound(x, region, target)?;
    if lower == *upper {
        return Ok(lower);
    }
    if let GroupSpec::Grid { rank } = x.group() {
        let base = period_floor(target, x.window(), rank);
        for period in base..base + 3 {
            let periodic = periodic_bound(x, target, rank, period)?;
            lower = lower.sum(&periodic)?;
            if lower == *upper {
                break;
            }
        }
    }
    Ok(lower)
}

fn extent(s: &FiniteSubset, rank: usize) -> i64 {
    (0..rank)
        .map(|axis| {
            let coords = s.iter().filter_map(|g| g.coords().map(|c| c[axis]));
            let (lo, hi) = coords.fold((i64::MAX, i64::MIN), |(lo, hi), c| (lo.min(c), hi.max(c)));
            if lo > hi {
                0
            } else {
                hi - lo
            }
        })
        .max()
        .unwrap_or(0)
}

fn period_floor(target: &FiniteSubset, window: &FiniteSubset, rank: usize) -> usize {
    (extent(target, rank).max(extent(window, rank)) + 1) as usize
}

/// Restriction to `target` of the configurations with period `period` along
/// every axis. Requires `period` larger than the extent of `target`.
pub fn periodic_bound<F: Field>(x: &LinearSft<F>, target: &FiniteSubset, rank: usize, period: usize) -> Result<PatternSpace<F>, ShiftError> {
    let p = period as i64;
    let torus = x.group().folner_box(period)?;
    let wrap = |g: &GroupElement| -> GroupElement {
        GroupElement::Grid(g.coords().expect("grid element").iter().map(|c| c.rem_euclid(p)).collect())
    };
    let wrapped_target: Vec<GroupElement> = target.iter().map(wrap).collect();
    if FiniteSubset::new(wrapped_target.iter().cloned()).len() != target.len() || rank == 0 {
        return Err(ShiftError::SupportMismatch(format!("period {period} does not separate the window")));
    }

    let f = x.field().clone();
    let dv = x.alphabet_dim();
    let n = torus.len() * dv;
    let checks = x.law().annihilator();
    let mut rows = Vec::new();
    for g in &torus {
        let cells: Vec<usize> = x
            .window()
            .iter()
            .map(|d| torus.index_of(&wrap(&g.mul(d))).expect("torus is closed under wrapping"))
            .collect();
        for check in checks.row_iter() {
            let mut r = vec![f.zero(); n];
            for (i, &c) in cells.iter().enumerate() {
                for v in 0..dv {
                    r[c * dv + v] = f.add(&r[c * dv + v], &check[i * dv + v]);
                }
            }
            rows.push(r);
        }
    }
    let space = kernel(&Matrix::from_rows(f, n, rows)?);
    let coords: Vec<usize> = wrapped_target
        .iter()
        .flat_map(|g| {
            let i = torus.index_of(g).expect("wrapped into torus");
            (0..dv).map(move |v| i * dv + v)
        })
        .collect();
    PatternSpace::new(target.clone(), dv, space.restrict(&coords))
}

fn integer(g: &GroupElement) -> Result<i64, ShiftError> {
    match g.coords() {
        Some([c]) => Ok(*c),
        _ => Err(ShiftError::NeedsRankOne),
    }
}

/// Exact projection on `ℤ`.
///
/// With the window spanning `w` consecutive cells, a locally admissible
/// pattern on an interval of length `≥ w − 1` extends to a configuration iff
/// its leftmost `w − 1` cells extend infinitely to the left and its
/// rightmost `w − 1` cells extend infinitely to the right. The extendable edge
/// blocks are the fixpoints of one-cell extension operators on `V^{w−1}`,
/// reached after at most `(w − 1)·dim V` strict steps.
fn project_1d<F: Field>(x: &LinearSft<F>, target: &FiniteSubset) -> Result<Projection<F>, ShiftError> {
    if x.group() != GroupSpec::z() {
        return Err(ShiftError::NeedsRankOne);
    }
    let f = x.field().clone();
    let dv = x.alphabet_dim();
    let offsets: Vec<i64> = x.window().iter().map(integer).collect::<Result<_, _>>()?;
    let lo_w = *offsets.first().expect("nonempty window");
    let width = (offsets.last().expect("nonempty window") - lo_w + 1) as usize;

    let t: Vec<i64> = target.iter().map(integer).collect::<Result<_, _>>()?;
    let lo = t[0];
    let hi = (*t.last().expect("nonempty target")).max(lo + width as i64 - 2);
    let hull = FiniteSubset::integers(lo..=hi);
    let mut space = x.locally_admissible(&hull)?.space().clone();
    let mut rounds = 0;

    if width > 1 {
        // law on the window span, positions 0..width
        let span_len = width * dv;
        let checks = x.law().annihilator();
        let rows: Vec<Vec<F::Elem>> = checks
            .row_iter()
            .map(|check| {
                let mut r = vec![f.zero(); span_len];
                for (i, off) in offsets.iter().enumerate() {
                    let c = (off - lo_w) as usize;
                    for v in 0..dv {
                        r[c * dv + v] = check[i * dv + v].clone();
                    }
                }
                r
            })
            .collect();
        let span_law = kernel(&Matrix::from_rows(f.clone(), span_len, rows)?);
        let edge = (width - 1) * dv;
        let head: Vec<usize> = (0..edge).collect();
        let tail: Vec<usize> = (dv..span_len).collect();

        let (left, lr) = edge_fixpoint(&span_law, &head, &tail)?;
        let (right, rr) = edge_fixpoint(&span_law, &tail, &head)?;
        rounds = lr.max(rr);

        let n = hull.len() * dv;
        let first: Vec<usize> = (0..edge).collect();
        let last: Vec<usize> = (n - edge..n).collect();
        space = space.constrain(&first, &left)?.constrain(&last, &right)?;
    }

    let full = PatternSpace::new(hull.clone(), dv, space)?;
    let coords = coordinates(&hull, target, dv)?;
    let restricted = PatternSpace::new(target.clone(), dv, full.space().restrict(&coords))?;
    Ok(Projection::exact(restricted, ChainStatus::Fixpoint, rounds))
}

/// Iterates `S ↦ {q|_to : q ∈ law, q|_from ∈ S}` from the whole edge space.
fn edge_fixpoint<F: Field>(law: &Subspace<F>, from: &[usize], to: &[usize]) -> Result<(Subspace<F>, usize), ShiftError> {
    let mut current = Subspace::full(law.field().clone(), from.len());
    let mut steps = 0;
    loop {
        let next = law.constrain(from, &current)?.restrict(to);
        steps += 1;
        if next == current {
            return Ok((current, steps));
        }
        current = next;
    }
}
