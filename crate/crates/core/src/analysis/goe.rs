use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldSpec, Matrix};
use crate::automaton::{AutomatonError, LinearCa};
use crate::group::{FiniteSubset, GroupSpec};
use crate::shiftspace::{LinearSft, StabilizationPolicy};

use super::{preinjectivity_scan, surjectivity_scan, Scales, Verdict, Witness};

/// Seeded random coefficient blocks. Over GF(p) entries are uniform; over
/// the rationals they are integers in `-3..=3`.
pub fn random_lca<F: Field>(seed: u64, field: &F, group: GroupSpec, alphabet_dim: usize, memory: &FiniteSubset) -> Result<LinearCa<F>, AutomatonError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = field.characteristic();
    let mut draw = || -> i64 {
        if p == 0 {
            rng.gen_range(-3..=3)
        } else {
            rng.gen_range(0..p) as i64
        }
    };
    let coeffs = memory
        .iter()
        .map(|_| {
            let data = (0..alphabet_dim * alphabet_dim).map(|_| field.from_i64(draw())).collect();
            Matrix::new(field.clone(), alphabet_dim, alphabet_dim, data)
        })
        .collect::<Result<Vec<_>, _>>()?;
    LinearCa::new(field.clone(), group, alphabet_dim, memory.clone(), coeffs)
}

#[derive(Debug, Clone)]
pub struct GoeInstance<F: Field> {
    pub id: String,
    pub subshift: LinearSft<F>,
    pub automaton: LinearCa<F>,
    /// Caller's assertion that `X` is strongly irreducible; the full shift always is.
    pub strongly_irreducible: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDims {
    pub alphabet_dim: usize,
    pub memory: usize,
    pub window: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub det: String,
    pub nonzero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeVerdicts {
    pub preinj: Verdict,
    pub surj: Verdict,
    pub oracle: Option<OracleVerdict>,
}

/// One line of a cross-check report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeRecord {
    pub id: String,
    pub group: GroupSpec,
    pub field: FieldSpec,
    pub dims: InstanceDims,
    pub verdicts: GoeVerdicts,
    /// False only when two exact verdicts conflict.
    pub agreement: bool,
    /// All verdicts point the same way at the scanned scale.
    pub consistent_at_scale: bool,
    /// Pre-injectivity and surjectivity split, one side refuted exactly.
    pub goe_failure: bool,
    /// Disagreement where the theory forbids it (amenable group, strongly
    /// irreducible subshift).
    pub defect: bool,
    pub witnesses: Vec<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeReport {
    pub records: Vec<GoeRecord>,
}

impl GoeReport {
    pub fn defects(&self) -> impl Iterator<Item = &GoeRecord> {
        self.records.iter().filter(|r| r.defect)
    }

    /// One JSON object per line, in record order.
    pub fn to_json_lines(&self) -> String {
        self.records.iter().map(|r| serde_json::to_value(r).expect("serializable").to_string() + "\n").collect()
    }
}

/// Runs both scans on every instance, plus the Laurent oracle for full shifts
/// over `ℤ`, in parallel. Records are sorted by id.
pub fn goe_crosscheck<F: Field>(instances: &[GoeInstance<F>], scales: &Scales, policy: &StabilizationPolicy) -> Result<GoeReport, AutomatonError> {
    let mut records = instances.par_iter().map(|inst| crosscheck_one(inst, scales, policy)).collect::<Result<Vec<_>, _>>()?;
    records.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(GoeReport { records })
}

fn crosscheck_one<F: Field>(inst: &GoeInstance<F>, scales: &Scales, policy: &StabilizationPolicy) -> Result<GoeRecord, AutomatonError> {
    let tau = &inst.automaton;
    let x = &inst.subshift;
    let group = tau.group();
    let preinj = preinjectivity_scan(tau, x, scales.rmax)?;
    let surj = surjectivity_scan(tau, x, &scales.windows, policy)?;
    let oracle = if group == GroupSpec::z() && x.is_full_shift() {
        let det = tau.laurent_det()?;
        Some(OracleVerdict { nonzero: !det.is_zero(), det: det.to_string() })
    } else {
        None
    };

    // the oracle decides both properties exactly; a scan may only contradict it by an exact refutation
    let agreement = match &oracle {
        Some(o) if o.nonzero => !preinj.is_exact_refutation() && !surj.is_exact_refutation(),
        _ => true,
    };
    let consistent_at_scale = match &oracle {
        Some(o) => preinj.is_refuted() != o.nonzero && surj.is_refuted() != o.nonzero,
        None => preinj.is_refuted() == surj.is_refuted(),
    };
    let goe_failure = (preinj.is_exact_refutation() && surj.is_verified()) || (surj.is_exact_refutation() && preinj.is_verified());
    // without an oracle a split is only evidence at scale, never a contradiction
    let defect = !agreement && group.is_amenable() && (inst.strongly_irreducible || x.is_full_shift());

    let witnesses = [&preinj, &surj].into_iter().filter_map(|v| v.witness().cloned()).collect();
    Ok(GoeRecord {
        id: inst.id.clone(),
        group,
        field: tau.field().spec(),
        dims: InstanceDims { alphabet_dim: tau.alphabet_dim(), memory: tau.memory().len(), window: x.window().len() },
        verdicts: GoeVerdicts { preinj, surj, oracle },
        agreement,
        consistent_at_scale,
        goe_failure,
        defect,
        witnesses,
    })
}
