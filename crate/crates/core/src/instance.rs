//! JSON instance files: a group, a field, a subshift and an automaton.
//!
//! ```json
//! {
//!   "group": {"kind": "free", "rank": 2},
//!   "field": {"kind": "prime", "p": 2},
//!   "subshift": "full",
//!   "automaton": {"alphabet_dim": 1, "memory": [""], "coeffs": [[["1"]]]}
//! }
//! ```
//!
//! `group` and `field` may also be given in short form, `"F2"` or `"GF(2)"`.
//! Scalars are decimal strings (`"p/q"` for rationals); plain integers are
//! accepted on input. Validation errors carry the path of the offending field.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, FieldSpec, Matrix, Subspace};
use crate::automaton::{AutomatonError, LinearCa};
use crate::group::{FiniteSubset, GroupElement, GroupSpec};
use crate::shiftspace::{LinearSft, ShiftError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct InstanceError {
    /// Dotted path into the document, `"."` for the root.
    pub path: String,
    pub message: String,
}

impl InstanceError {
    fn at(path: impl Into<String>, message: impl ToString) -> Self {
        InstanceError { path: path.into(), message: message.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Text(String),
    Int(i64),
}

impl Scalar {
    fn parse<F: Field>(&self, field: &F) -> Result<F::Elem, String> {
        match self {
            Scalar::Text(s) => field.parse(s).map_err(|e| e.to_string()),
            Scalar::Int(v) => Ok(field.from_i64(*v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SftSpec {
    pub alphabet_dim: usize,
    pub window: Vec<GroupElement>,
    pub law_basis: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubshiftSpec {
    /// Only `"full"` is accepted.
    Named(String),
    Sft(SftSpec),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaSpec {
    pub alphabet_dim: usize,
    pub memory: Vec<GroupElement>,
    /// One `alphabet_dim × alphabet_dim` block per memory element, rows first.
    pub coeffs: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plateau: Option<usize>,
    /// Radii of the balls `Δ` for the irreducibility check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_radii: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(deserialize_with = "tagged_or_short")]
    pub group: GroupSpec,
    #[serde(deserialize_with = "tagged_or_short")]
    pub field: FieldSpec,
    pub subshift: SubshiftSpec,
    pub automaton: CaSpec,
    #[serde(default, skip_serializing_if = "is_default")]
    pub scan: ScanOverrides,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub assume_strongly_irreducible: bool,
}

/// Either the tagged object or its short string form (`"Z^2"`, `"GF(3)"`).
fn tagged_or_short<'de, D, T>(d: D) -> Result<T, D::Error>
where
    D: serde::Deserializer<'de>,
    T: Deserialize<'de> + std::str::FromStr,
    T::Err: std::fmt::Display,
{
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Form<T> {
        Short(String),
        Tagged(T),
    }
    match Form::<T>::deserialize(d)? {
        Form::Short(s) => s.parse().map_err(serde::de::Error::custom),
        Form::Tagged(t) => Ok(t),
    }
}

fn is_default(s: &ScanOverrides) -> bool {
    *s == ScanOverrides::default()
}

/// A validated instance over a concrete field.
#[derive(Debug, Clone)]
pub struct Instance<F: Field> {
    pub id: String,
    pub subshift: LinearSft<F>,
    pub automaton: LinearCa<F>,
    pub scan: ScanOverrides,
    pub assume_strongly_irreducible: bool,
}

/// Parses JSON, reporting the path of the first structural error.
pub fn parse_instance(text: &str) -> Result<InstanceFile, InstanceError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        InstanceError::at(path, e.into_inner())
    })
}

fn element(group: GroupSpec, g: &GroupElement, path: String) -> Result<GroupElement, InstanceError> {
    if group.contains(g) {
        Ok(g.clone())
    } else {
        Err(InstanceError::at(path, format!("{g} is not an element of {group}")))
    }
}

fn elements(group: GroupSpec, list: &[GroupElement], path: &str) -> Result<FiniteSubset, InstanceError> {
    let mut out = Vec::with_capacity(list.len());
    for (i, g) in list.iter().enumerate() {
        let g = element(group, g, format!("{path}[{i}]"))?;
        if out.contains(&g) {
            return Err(InstanceError::at(format!("{path}[{i}]"), format!("{g} listed twice")));
        }
        out.push(g);
    }
    Ok(FiniteSubset::new(out))
}

fn scalars<F: Field>(field: &F, row: &[Scalar], path: &str) -> Result<Vec<F::Elem>, InstanceError> {
    row.iter().enumerate().map(|(i, s)| s.parse(field).map_err(|m| InstanceError::at(format!("{path}[{i}]"), m))).collect()
}

impl InstanceFile {
    /// Builds the typed instance. `field` must match `self.field` unless
    /// `allow_field_override` is set, in which case scalars are reinterpreted.
    pub fn build<F: Field>(&self, field: F, allow_field_override: bool) -> Result<Instance<F>, InstanceError> {
        if !allow_field_override && field.spec() != self.field {
            return Err(InstanceError::at("field", format!("expected {}, building over {}", self.field, field.spec())));
        }
        let group = self.group;
        group.check().map_err(|e| InstanceError::at("group", e))?;

        let ca = &self.automaton;
        let dv = ca.alphabet_dim;
        if dv == 0 {
            return Err(InstanceError::at("automaton.alphabet_dim", "must be at least 1"));
        }
        // keep blocks attached to their listed element, then reorder canonically
        if ca.coeffs.len() != ca.memory.len() {
            return Err(InstanceError::at("automaton.coeffs", format!("{} blocks for {} memory elements", ca.coeffs.len(), ca.memory.len())));
        }
        let memory = elements(group, &ca.memory, "automaton.memory")?;
        if memory.is_empty() {
            return Err(InstanceError::at("automaton.memory", "must be nonempty"));
        }
        let mut blocks: Vec<Option<Matrix<F>>> = vec![None; memory.len()];
        for (i, (g, rows)) in ca.memory.iter().zip(&ca.coeffs).enumerate() {
            let path = format!("automaton.coeffs[{i}]");
            if rows.len() != dv {
                return Err(InstanceError::at(path, format!("{} rows, expected {dv}", rows.len())));
            }
            let mut parsed = Vec::with_capacity(dv);
            for (r, row) in rows.iter().enumerate() {
                if row.len() != dv {
                    return Err(InstanceError::at(format!("{path}[{r}]"), format!("{} entries, expected {dv}", row.len())));
                }
                parsed.push(scalars(&field, row, &format!("{path}[{r}]"))?);
            }
            let m = Matrix::from_rows(field.clone(), dv, parsed).map_err(|e| InstanceError::at(path, e))?;
            blocks[memory.index_of(g).expect("listed element")] = Some(m);
        }
        let coeffs = blocks.into_iter().map(|b| b.expect("every element has a block")).collect();
        let automaton = LinearCa::new(field.clone(), group, dv, memory, coeffs).map_err(|e| InstanceError::at("automaton", e))?;

        let subshift = match &self.subshift {
            SubshiftSpec::Named(name) if name == "full" => LinearSft::full(field.clone(), group, dv),
            SubshiftSpec::Named(name) => return Err(InstanceError::at("subshift", format!("unknown subshift {name:?}, expected \"full\" or an object"))),
            SubshiftSpec::Sft(s) => {
                if s.alphabet_dim != dv {
                    return Err(InstanceError::at("subshift.alphabet_dim", format!("{} but the automaton has {dv}", s.alphabet_dim)));
                }
                let window = elements(group, &s.window, "subshift.window")?;
                if window.is_empty() {
                    return Err(InstanceError::at("subshift.window", "must be nonempty"));
                }
                // law coordinates follow the listed window order; permute into canonical order
                let n = window.len() * dv;
                let order: Vec<usize> = s.window.iter().map(|g| window.index_of(g).expect("listed element")).collect();
                let mut rows = Vec::with_capacity(s.law_basis.len());
                for (i, row) in s.law_basis.iter().enumerate() {
                    let path = format!("subshift.law_basis[{i}]");
                    if row.len() != n {
                        return Err(InstanceError::at(path, format!("{} entries, expected |window|·alphabet_dim = {n}", row.len())));
                    }
                    let vals = scalars(&field, row, &path)?;
                    let mut canon = vec![field.zero(); n];
                    for (k, &pos) in order.iter().enumerate() {
                        for v in 0..dv {
                            canon[pos * dv + v] = vals[k * dv + v].clone();
                        }
                    }
                    rows.push(canon);
                }
                let law = Subspace::span(field.clone(), n, rows).map_err(|e| InstanceError::at("subshift.law_basis", e))?;
                LinearSft::new(group, dv, window, law).map_err(|e| InstanceError::at("subshift", e))?
            }
        };

        Ok(Instance {
            id: self.id.clone().unwrap_or_else(|| "instance".to_string()),
            subshift,
            automaton,
            scan: self.scan.clone(),
            assume_strongly_irreducible: self.assume_strongly_irreducible,
        })
    }

    /// The file describing `(X, τ)`; `X` is written as `"full"` when its law is trivial.
    pub fn export<F: Field>(id: &str, x: &LinearSft<F>, tau: &LinearCa<F>, assume_strongly_irreducible: bool) -> Result<Self, AutomatonError> {
        if x.group() != tau.group() || x.alphabet_dim() != tau.alphabet_dim() {
            return Err(AutomatonError::Incompatible("subshift and automaton".into()));
        }
        let f = tau.field();
        let text = |v: &F::Elem| Scalar::Text(f.format(v));
        let subshift = if x.is_full_shift() {
            SubshiftSpec::Named("full".into())
        } else {
            SubshiftSpec::Sft(SftSpec {
                alphabet_dim: x.alphabet_dim(),
                window: x.window().iter().cloned().collect(),
                law_basis: x.law().basis_vectors().map(|r| r.iter().map(text).collect()).collect(),
            })
        };
        let automaton = CaSpec {
            alphabet_dim: tau.alphabet_dim(),
            memory: tau.memory().iter().cloned().collect(),
            coeffs: tau.coeffs().iter().map(|m| m.row_iter().map(|r| r.iter().map(text).collect()).collect()).collect(),
        };
        Ok(InstanceFile {
            id: Some(id.to_string()),
            group: tau.group(),
            field: f.spec(),
            subshift,
            automaton,
            scan: ScanOverrides::default(),
            assume_strongly_irreducible,
        })
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("serializable");
        serde_json::to_string_pretty(&v).expect("serializable")
    }
}

impl From<ShiftError> for InstanceError {
    fn from(e: ShiftError) -> Self {
        InstanceError::at(".", e)
    }
}
