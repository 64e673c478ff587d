use std::fmt;
use std::path::Path;

use lingoe::algebra::{Field, FieldSpec, PrimeField, Rationals};
use lingoe::analysis::{
    goe_crosscheck, preinjectivity_scan, random_lca, replay_witness, self_map_check, surjectivity_scan, surjunctivity_check, GoeInstance, Scales, Verdict,
};
use lingoe::examples::{diff_expected, example_by_name, list_examples, run_example};
use lingoe::group::{covering_shape, greedy_tiling, overlapping_pair, tiles_inside, uncovered_interior, FiniteSubset, GroupElement, GroupSpec};
use lingoe::instance::{parse_instance, Instance, InstanceFile, ScanOverrides};
use lingoe::shiftspace::{delta_irreducibility_check, mean_dimension_profile, LinearSft, SamplerParams, StabilizationPolicy};
use serde_json::{json, Value};

use crate::{Cli, Command, GlobalFlags};

pub struct Output {
    pub text: String,
    pub violation: Option<String>,
}

impl Output {
    /// 3 when a mathematical invariant was violated, 0 otherwise.
    pub fn code(&self) -> u8 {
        if self.violation.is_some() {
            3
        } else {
            0
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Invalid(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Invalid(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Invalid(m) => f.write_str(m),
        }
    }
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

/// Runs `$body` with `$f` bound to the concrete field named by `$spec`.
macro_rules! with_field {
    ($spec:expr, $f:ident => $body:expr) => {
        match $spec {
            FieldSpec::Prime { p } => {
                let $f = PrimeField::new(p).map_err(usage)?;
                $body
            }
            FieldSpec::Rational => {
                let $f = Rationals;
                $body
            }
        }
    };
}

fn document(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}

fn done(v: Value) -> Output {
    Output { text: document(v), violation: None }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    let field_override = g.field.as_deref().map(str::parse::<FieldSpec>).transpose().map_err(|e| usage(format!("--field: {e}")))?;
    match &cli.command {
        Command::Analyze { instance, delta } => {
            let file = load(instance)?;
            with_field!(field_override.unwrap_or(file.field), f => analyze(&file, f, field_override.is_some(), delta, g))
        }
        Command::Mdim { instance } => {
            let file = load(instance)?;
            with_field!(field_override.unwrap_or(file.field), f => mdim(&file, f, field_override.is_some(), g))
        }
        Command::Irreducible { instance, delta } => {
            let file = load(instance)?;
            with_field!(field_override.unwrap_or(file.field), f => irreducible(&file, f, field_override.is_some(), delta, g))
        }
        Command::Tile { group, shape, region } => tile(group, shape, region),
        Command::GoeScan { seeds, group, alphabet_dim, memory } => {
            with_field!(field_override.unwrap_or(FieldSpec::Prime { p: 2 }), f => goe_scan(f, *seeds, group, *alphabet_dim, memory.as_deref(), g))
        }
        Command::Example { name, list, export } => {
            let spec = field_override.unwrap_or(FieldSpec::Prime { p: 2 });
            if *list {
                return with_field!(spec, f => Ok(example_list(f)));
            }
            let name = name.as_deref().ok_or_else(|| usage("example: give a name or --list"))?;
            with_field!(spec, f => example(f, name, *export, g))
        }
    }
}

fn load(path: &Path) -> Result<InstanceFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    parse_instance(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn build<F: Field>(file: &InstanceFile, field: F, overridden: bool) -> Result<Instance<F>, CliError> {
    file.build(field, overridden).map_err(|e| invalid(format!("invalid instance: {e}")))
}

fn policy(g: &GlobalFlags, scan: &ScanOverrides, group: GroupSpec) -> StabilizationPolicy {
    match g.plateau.or(scan.plateau) {
        Some(s) => StabilizationPolicy::plateau(s),
        None => StabilizationPolicy::for_group(group),
    }
}

fn scales(g: &GlobalFlags, scan: &ScanOverrides, group: GroupSpec) -> Scales {
    let (r0, n0) = Scales::default_params(group);
    Scales::new(group, g.rmax.or(scan.rmax).unwrap_or(r0), g.nmax.or(scan.nmax).unwrap_or(n0))
}

fn instance_header<F: Field>(inst: &Instance<F>) -> Value {
    json!({
        "id": inst.id,
        "group": inst.automaton.group().to_string(),
        "field": inst.automaton.field().spec().to_string(),
        "alphabet_dim": inst.automaton.alphabet_dim(),
        "memory": inst.automaton.memory(),
        "window": inst.subshift.window(),
        "full_shift": inst.subshift.is_full_shift(),
    })
}

fn sampler(g: &GlobalFlags) -> SamplerParams {
    SamplerParams { seed: g.seed, ..SamplerParams::default() }
}

fn irreducibility_results<F: Field>(x: &LinearSft<F>, radii: &[usize], g: &GlobalFlags, pol: &StabilizationPolicy) -> Result<Vec<Value>, CliError> {
    radii
        .iter()
        .map(|&r| {
            let v = delta_irreducibility_check(x, &x.group().ball(r), &sampler(g), pol).map_err(invalid)?;
            Ok(json!({ "delta_radius": r, "verdict": v }))
        })
        .collect()
}

fn analyze<F: Field>(file: &InstanceFile, field: F, overridden: bool, delta: &[usize], g: &GlobalFlags) -> Result<Output, CliError> {
    let inst = build(file, field, overridden)?;
    let (tau, x) = (&inst.automaton, &inst.subshift);
    let group = tau.group();
    let pol = policy(g, &inst.scan, group);
    let sc = scales(g, &inst.scan, group);

    let preinj = preinjectivity_scan(tau, x, sc.rmax).map_err(invalid)?;
    let surj = surjectivity_scan(tau, x, &sc.windows, &pol).map_err(invalid)?;
    let oracle = if group == GroupSpec::z() && x.is_full_shift() {
        let det = tau.laurent_det().map_err(invalid)?;
        Some(json!({ "det": det.to_string(), "nonzero": !det.is_zero() }))
    } else {
        None
    };
    let self_map = self_map_check(tau, x, &pol).map_err(invalid)?;
    let strongly_irreducible = inst.assume_strongly_irreducible || x.is_full_shift();
    let surjunctivity = surjunctivity_check(tau, x, &sc.windows, &pol, strongly_irreducible).map_err(invalid)?;
    let radii = if delta.is_empty() { inst.scan.delta_radii.clone().unwrap_or_default() } else { delta.to_vec() };
    let irreducibility = irreducibility_results(x, &radii, g, &pol)?;

    let mut violations = Vec::new();
    let witnesses: Vec<_> = [&preinj, &surj].into_iter().filter_map(Verdict::witness).collect();
    for w in &witnesses {
        if !replay_witness(tau, x, w, &pol).map_err(invalid)? {
            violations.push("a stored witness failed to replay".to_string());
        }
    }
    let det_nonzero = oracle.as_ref().map(|o| o["nonzero"] == json!(true));
    if det_nonzero == Some(true) && (preinj.is_exact_refutation() || surj.is_exact_refutation()) {
        violations.push("nonzero symbol determinant contradicts an exact refutation".to_string());
    }
    if surjunctivity.defect {
        violations.push("injective automaton on a strongly irreducible subshift over an amenable group is not surjective".to_string());
    }

    let report = json!({
        "instance": instance_header(&inst),
        "scales": { "rmax": sc.rmax, "windows": sc.windows.len(), "policy": pol },
        "verdicts": {
            "preinj": preinj,
            "surj": surj,
            "oracle": oracle,
            "self_map": self_map,
            "surjunctivity": surjunctivity,
            "irreducibility": irreducibility,
        },
        "witnesses": witnesses,
        "exact": {
            "preinj": preinj.exact(),
            "surj": surj.exact(),
            "oracle": det_nonzero.is_some(),
            "self_map": self_map.exact,
        },
        "violations": violations,
    });
    Ok(Output { text: document(report), violation: (!violations.is_empty()).then(|| violations.join("; ")) })
}

fn mdim<F: Field>(file: &InstanceFile, field: F, overridden: bool, g: &GlobalFlags) -> Result<Output, CliError> {
    let inst = build(file, field, overridden)?;
    let group = inst.subshift.group();
    if !group.is_amenable() {
        return Err(invalid(format!("mdim needs Følner boxes; {group} has none")));
    }
    let nmax = g.nmax.or(inst.scan.nmax).unwrap_or(6);
    let profile = mean_dimension_profile(&inst.subshift, nmax, &policy(g, &inst.scan, group)).map_err(invalid)?;
    let ratios: Vec<Value> = profile.iter().map(|e| serde_json::to_value(e).expect("serializable")["ratio"].clone()).collect();
    let exact = profile.iter().all(|e| e.exact);
    Ok(done(json!({ "instance": instance_header(&inst), "profile": profile, "ratios": ratios, "exact": exact })))
}

fn irreducible<F: Field>(file: &InstanceFile, field: F, overridden: bool, delta: &[usize], g: &GlobalFlags) -> Result<Output, CliError> {
    let inst = build(file, field, overridden)?;
    let pol = policy(g, &inst.scan, inst.subshift.group());
    let results = irreducibility_results(&inst.subshift, delta, g, &pol)?;
    Ok(done(json!({ "instance": instance_header(&inst), "sampler": sampler(g), "results": results })))
}

fn parse_group(s: &str) -> Result<GroupSpec, CliError> {
    let group: GroupSpec = s.parse().map_err(|e| usage(format!("--group: {e}")))?;
    group.check().map_err(|e| usage(format!("--group: {e}")))?;
    Ok(group)
}

fn parse_set(group: GroupSpec, text: &str, what: &str) -> Result<FiniteSubset, CliError> {
    let t = text.trim();
    if let Some(n) = t.strip_prefix("box:") {
        let n: usize = n.parse().map_err(|_| usage(format!("{what}: bad size {n:?}")))?;
        return group.folner_box(n).map_err(|e| invalid(format!("{what}: {e}")));
    }
    if let Some(r) = t.strip_prefix("ball:") {
        let r: usize = r.parse().map_err(|_| usage(format!("{what}: bad radius {r:?}")))?;
        return Ok(group.ball(r));
    }
    let elems: Vec<GroupElement> = serde_json::from_str(t).map_err(|e| invalid(format!("{what}: {e}")))?;
    if let Some(g) = elems.iter().find(|g| !group.contains(g)) {
        return Err(invalid(format!("{what}: {g} is not an element of {group}")));
    }
    Ok(FiniteSubset::new(elems))
}

fn tile(group: &str, shape: &str, region: &str) -> Result<Output, CliError> {
    let group = parse_group(group)?;
    let e = parse_set(group, shape, "--E")?;
    let region = parse_set(group, region, "--region")?;
    let tiles = greedy_tiling(&e, &region).map_err(invalid)?;
    let f = covering_shape(&e);
    let overlap = overlapping_pair(&tiles, &e);
    let uncovered = uncovered_interior(&tiles, &f, &region);
    let inside = tiles_inside(&tiles, &e, &region);
    // |T ∩ region-interior| ≥ |region| / |F|, compared without division
    let density_ok = inside.len() * f.len() >= region.len();
    Ok(done(json!({
        "group": group.to_string(),
        "E": e,
        "F": f,
        "region_size": region.len(),
        "tiles": tiles,
        "disjoint": overlap.is_none(),
        "interior_covered": uncovered.is_empty(),
        "uncovered_interior": uncovered,
        "tiles_inside": inside.len(),
        "density_bound": format!("{}/{}", region.len(), f.len()),
        "density_ok": density_ok,
    })))
}

fn goe_scan<F: Field>(field: F, count: usize, group: &str, alphabet_dim: usize, memory: Option<&str>, g: &GlobalFlags) -> Result<Output, CliError> {
    let group = parse_group(group)?;
    if alphabet_dim == 0 {
        return Err(usage("--alphabet-dim must be at least 1"));
    }
    let memory = match memory {
        Some(m) => parse_set(group, m, "--memory")?,
        None => group.ball(1),
    };
    if memory.is_empty() {
        return Err(invalid("--memory must be nonempty"));
    }
    let instances = (0..count as u64)
        .map(|i| {
            let seed = g.seed + i;
            let tau = random_lca(seed, &field, group, alphabet_dim, &memory).map_err(invalid)?;
            Ok(GoeInstance { id: format!("seed-{seed:010}"), subshift: LinearSft::full(field.clone(), group, alphabet_dim), automaton: tau, strongly_irreducible: true })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let scan = ScanOverrides::default();
    let report = goe_crosscheck(&instances, &scales(g, &scan, group), &policy(g, &scan, group)).map_err(invalid)?;
    let defects: Vec<_> = report.defects().map(|r| r.id.clone()).collect();
    let misses = report.records.iter().filter(|r| !r.consistent_at_scale).count();
    if misses > 0 {
        eprintln!("{misses} instance(s) not decided consistently at the scanned scale");
    }
    Ok(Output { text: report.to_json_lines(), violation: (!defects.is_empty()).then(|| format!("defects in {}", defects.join(", "))) })
}

fn example_list<F: Field>(field: F) -> Output {
    let items: Vec<Value> = list_examples(field)
        .iter()
        .map(|e| json!({ "name": e.name, "group": e.group().to_string(), "citation": e.expected.citation }))
        .collect();
    done(Value::Array(items))
}

fn example<F: Field>(field: F, name: &str, export: bool, g: &GlobalFlags) -> Result<Output, CliError> {
    let ex = example_by_name(field, name).map_err(usage)?;
    if export {
        let file = InstanceFile::export(ex.name, &ex.subshift, &ex.automaton, ex.strongly_irreducible).map_err(invalid)?;
        return Ok(Output { text: file.to_json() + "\n", violation: None });
    }
    let scan = ScanOverrides::default();
    let pol = policy(g, &scan, ex.group());
    let run = run_example(&ex, &scales(g, &scan, ex.group()), &pol).map_err(invalid)?;
    let mut diffs = diff_expected(&ex.expected, &run);
    for v in [&run.preinj, &run.surj] {
        if let Some(w) = v.witness() {
            if !replay_witness(&ex.automaton, &ex.subshift, w, &pol).map_err(invalid)? {
                diffs.push(format!("{} witness failed to replay", v.label()));
            }
        }
    }
    let report = json!({
        "name": ex.name,
        "group": ex.group().to_string(),
        "field": ex.field().spec().to_string(),
        "citation": ex.expected.citation,
        "expected": ex.expected,
        "run": run,
        "diffs": diffs,
    });
    Ok(Output { text: document(report), violation: (!diffs.is_empty()).then(|| diffs.join("; ")) })
}
