use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, ensure, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::config::{CampaignConfig, NamedGrid, RadiiSpec, Theorem};
use super::record::{
    instance_id, load_function_file, GeneratedFile, Record, Report, RunRecord, Status,
};
use super::{CoeffsArgs, Exit, Format, GenArgs, ProofcheckArgs, RadiusArgs, ReportArgs, SearchArgs, SharpnessArgs, VerifyArgs};
use crate::checks::{
    check_bb2_norm_bound, check_bohr, check_cor2, check_thm2_bounds, coefficient_bound_eq14, counterexample_search,
    default_z_samples, proof_step_validate, radius_from_abs, require_hypotheses, sharpness_scan, thm1_admissible_radius,
    BohrStatus, BohrVerdict, CheckError, ProofParams, ProofStep, ProofStepReport, RadiusReport, Relaxation,
    SharpnessRow, DEFAULT_TOL,
};
use crate::linalg::{abs_operator, LoewnerRelation};
use crate::models::{
    generate_cor2_instance, generate_thm1_instance, generate_thm2_instance, generate_transfer_instance,
    hypothesis_check, FunctionClass, FunctionFile, HypothesisClass, HypothesisReport, OperatorFunction,
};

const DEFAULT_DEGREES: [u32; 2] = [1, 4];
const DEFAULT_STATE_DIM: usize = 2;
const DEFAULT_BISECTION_TOL: f64 = 1e-6;
/// Offset below the guaranteed radius used by the `guaranteed` grid.
const GUARANTEED_OFFSET: f64 = 1e-6;

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
            }
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn emit_run(run: &RunRecord, format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => to_json(run),
        Format::Csv => run.to_csv(),
        Format::Md => Report::aggregate(&[(run.command.clone(), run.clone())]).to_markdown(),
    };
    emit(out, &text)
}

/// Collects per-item results in input order, stopping at the first error.
fn ordered<T>(results: Vec<Result<T>>) -> Result<Vec<T>> {
    results.into_iter().collect()
}

/// Path and content digest of an input file, hashed into the run config.
#[derive(Debug, Clone, Serialize)]
struct InputRef {
    path: String,
    sha256: String,
}

fn input_refs(files: &[PathBuf]) -> Result<Vec<InputRef>> {
    files
        .iter()
        .map(|p| {
            let bytes = std::fs::read(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(InputRef {
                path: p.display().to_string(),
                sha256: hex::encode(Sha256::digest(&bytes)),
            })
        })
        .collect()
}

fn file_list(files: &[PathBuf]) -> String {
    files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>().join(" ")
}

fn radii_arg(spec: &RadiiSpec) -> String {
    match spec {
        RadiiSpec::Named(NamedGrid::Guaranteed) => "--r guaranteed".into(),
        RadiiSpec::Named(NamedGrid::Cor2) => "--r cor2".into(),
        RadiiSpec::Named(NamedGrid::Tenths) => "--r tenths".into(),
        RadiiSpec::List(radii) => radii.iter().map(|r| format!("--r {r}")).collect::<Vec<_>>().join(" "),
    }
}

struct Loaded {
    id: String,
    file: FunctionFile,
    f: OperatorFunction,
}

fn load(path: &Path, relax: bool) -> Result<Loaded> {
    let file = load_function_file(path)?;
    let f = file.to_function(relax).with_context(|| path.display().to_string())?;
    Ok(Loaded {
        id: instance_id(path),
        file,
        f,
    })
}

/// `radius_from_abs(|A_0|) − 1e−6`, or the normal-case radius when hypotheses are enforced.
fn guaranteed_radius(f: &OperatorFunction, relax: bool) -> Result<f64, CheckError> {
    let a0 = f.initial_coefficient();
    let admissible = if relax {
        radius_from_abs(&abs_operator(&a0))?
    } else {
        thm1_admissible_radius(&a0)?
    };
    Ok((admissible.radius - GUARANTEED_OFFSET).max(0.0))
}

fn radii_for(spec: &RadiiSpec, f: &OperatorFunction, relax: bool) -> Result<Vec<f64>, CheckError> {
    match spec {
        RadiiSpec::List(radii) => Ok(radii.clone()),
        RadiiSpec::Named(grid) => match grid.fixed() {
            Some(radii) => Ok(radii),
            None => Ok(vec![guaranteed_radius(f, relax)?]),
        },
    }
}

#[derive(Debug, Clone, Serialize)]
struct GenConfig {
    class: FunctionClass,
    dims: Vec<usize>,
    count: usize,
    seed: u64,
    degrees: [u32; 2],
    state_dim: usize,
    mobius: crate::models::MobiusOverrides,
    half_plane: crate::models::HalfPlaneOverrides,
}

fn generate(c: &GenConfig, dim: usize, seed: u64) -> Result<OperatorFunction> {
    let degrees = c.degrees[0]..=c.degrees[1];
    let f = match c.class {
        FunctionClass::Thm1 => generate_thm1_instance(dim, degrees, seed, &c.mobius)?,
        FunctionClass::Cor2 => generate_cor2_instance(dim, degrees, seed, &c.mobius)?,
        FunctionClass::Thm2 => generate_thm2_instance(dim, seed, &c.half_plane)?,
        FunctionClass::Transfer => generate_transfer_instance(dim, c.state_dim, seed)?,
        FunctionClass::Polynomial => bail!("gen has no generator for class polynomial"),
    };
    Ok(f)
}

/// Writes `count` files per dimension, named `<class>_d<dim>_<index>.json`.
/// Instance `i` (numbered across all dimensions) uses seed `seed + i`.
pub fn gen(args: GenArgs) -> Result<Exit> {
    let config = CampaignConfig::load(args.config.as_deref())?;
    let mut mobius = config.mobius.clone();
    mobius.relax |= args.relax;
    let c = GenConfig {
        class: args.class.or(config.class).unwrap_or(FunctionClass::Thm1),
        dims: if !args.dim.is_empty() {
            args.dim
        } else if !config.dims.is_empty() {
            config.dims.clone()
        } else {
            vec![4]
        },
        count: args.count.or(config.count).unwrap_or(10),
        seed: config.resolve_seed(args.seed)?,
        degrees: config.degrees.unwrap_or(DEFAULT_DEGREES),
        state_dim: config.state_dim.unwrap_or(DEFAULT_STATE_DIM),
        mobius,
        half_plane: config.half_plane.clone(),
    };
    ensure!(c.count >= 1, "count must be at least 1");
    ensure!(c.dims.iter().all(|&d| d >= 1), "dims must be at least 1");
    let out = args
        .out
        .or(config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("instances"));
    let jobs: Vec<(usize, usize)> = c
        .dims
        .iter()
        .flat_map(|&d| std::iter::repeat_n(d, c.count))
        .enumerate()
        .collect();
    let hclass = c.class.hypothesis_class().unwrap_or(HypothesisClass::Schur);
    let files = ordered(
        jobs.par_iter()
            .map(|&(i, dim)| {
                let seed = c.seed.wrapping_add(i as u64);
                let f = generate(&c, dim, seed).with_context(|| format!("instance {i} (dim {dim}, seed {seed})"))?;
                let name = format!("{}_d{dim}_{i:04}.json", c.class.as_str());
                let generated = GeneratedFile {
                    function: FunctionFile::new(&f, c.class, Some(seed)),
                    hypotheses: hypothesis_check(&f, hclass),
                };
                Ok((name, to_json(&generated)))
            })
            .collect(),
    )?;
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    for (name, text) in &files {
        emit(Some(&out.join(name)), text)?;
    }
    eprintln!(
        "wrote {} {} instances to {} (config {})",
        files.len(),
        c.class.as_str(),
        out.display(),
        super::config::config_hash(&c)
    );
    Ok(Exit::Holds)
}

pub fn coeffs(args: CoeffsArgs) -> Result<Exit> {
    let loaded = load(&args.file, args.relax)?;
    emit(args.out.as_deref(), &to_json(&loaded.f.coefficients(args.n)))?;
    Ok(Exit::Holds)
}

#[derive(Debug, Clone, Serialize)]
struct VerifyConfig {
    theorem: Theorem,
    radii: RadiiSpec,
    tol: f64,
    relax: bool,
    inputs: Vec<InputRef>,
}

fn verdict_record(l: &Loaded, r: f64, v: &BohrVerdict) -> Record {
    Record {
        instance_id: l.id.clone(),
        class: l.file.class.as_str().into(),
        dim: l.file.dim,
        step: v.step.clone(),
        r: Some(r),
        status: v.status.into(),
        margin: v.margin(),
        boundary: v.boundary,
        detail: serde_json::to_value(v).expect("verdict serializes"),
    }
}

fn verify_one(l: &Loaded, c: &VerifyConfig) -> Result<Vec<Record>> {
    if matches!(c.theorem, Theorem::Thm1 | Theorem::Cor1) {
        if let Err(e) = require_hypotheses(&l.f, HypothesisClass::Thm1) {
            if !c.relax {
                return Err(e.into());
            }
            eprintln!("warning: {}: {e}", l.id);
        }
    }
    let radii = radii_for(&c.radii, &l.f, c.relax)?;
    radii
        .into_iter()
        .map(|r| {
            let record = match c.theorem {
                Theorem::Thm1 => verdict_record(l, r, &check_bohr(&l.f, r, c.tol).with_step("thm1")),
                Theorem::Cor1 => {
                    ensure!(r <= 1.0 / 3.0, "cor1 covers r <= 1/3, got r = {r}");
                    verdict_record(l, r, &check_bohr(&l.f, r, c.tol).with_step("cor1"))
                }
                Theorem::Cor2 => verdict_record(l, r, &check_cor2(&l.f, r, c.tol)?),
                Theorem::Bb2Remark => verdict_record(l, r, &check_bb2_norm_bound(&l.f, r, c.tol)?),
                Theorem::Thm2 => {
                    let b = check_thm2_bounds(&l.f, r, c.tol)?;
                    let margins = [b.bohr.margin(), b.eq2.verdict.min_gap, b.final_bound.verdict.min_gap];
                    Record {
                        instance_id: l.id.clone(),
                        class: l.file.class.as_str().into(),
                        dim: l.file.dim,
                        step: Some("thm2".into()),
                        r: Some(r),
                        status: b.status().into(),
                        margin: margins.into_iter().fold(f64::INFINITY, f64::min),
                        boundary: b.bohr.boundary
                            || b.eq2.verdict.relation == LoewnerRelation::Boundary
                            || b.final_bound.verdict.relation == LoewnerRelation::Boundary,
                        detail: serde_json::to_value(&b).expect("bounds serialize"),
                    }
                }
            };
            Ok(record)
        })
        .collect()
}

pub fn verify(args: VerifyArgs) -> Result<Exit> {
    let start = Instant::now();
    let config = CampaignConfig::load(args.config.as_deref())?;
    let theorem = args
        .theorem
        .or(config.theorem)
        .ok_or_else(|| anyhow!("--theorem is required (thm1, cor1, cor2, thm2, bb2remark)"))?;
    let radii = RadiiSpec::from_args(&args.radii)?
        .or(config.radii.clone())
        .unwrap_or_else(|| theorem.default_radii());
    radii.validate()?;
    let c = VerifyConfig {
        theorem,
        radii,
        tol: args.tol.or(config.tolerances.bohr).unwrap_or(DEFAULT_TOL),
        relax: args.relax,
        inputs: input_refs(&args.files)?,
    };
    let records: Vec<Record> = ordered(
        args.files
            .par_iter()
            .map(|p| {
                let l = load(p, c.relax)?;
                verify_one(&l, &c).with_context(|| l.id.clone())
            })
            .collect(),
    )?
    .into_iter()
    .flatten()
    .collect();
    let reproduce = format!(
        "bohrlab verify --theorem {} {} --tol {:e}{} {}",
        c.theorem.as_str(),
        radii_arg(&c.radii),
        c.tol,
        if c.relax { " --relax" } else { "" },
        file_list(&args.files)
    );
    let mut run = RunRecord::new("verify", &c, reproduce, records);
    if args.timing {
        run.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit_run(&run, args.format, args.out.as_deref())?;
    Ok(Exit::from_summary(&run.summary))
}

#[derive(Debug, Clone, Serialize)]
struct ProofcheckConfig {
    steps: Vec<ProofStep>,
    k: Vec<usize>,
    radii: RadiiSpec,
    samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
    inputs: Vec<InputRef>,
}

fn default_steps(class: FunctionClass) -> Result<Vec<ProofStep>> {
    let hclass = match class.hypothesis_class() {
        Some(HypothesisClass::Cor2) => HypothesisClass::Thm1,
        Some(h) => h,
        None => bail!("class polynomial has no proof steps; pass --steps"),
    };
    Ok(ProofStep::ALL.into_iter().filter(|s| s.class() == hclass).collect())
}

fn depends_on_r(step: ProofStep) -> bool {
    matches!(
        step,
        ProofStep::Eq11 | ProofStep::Eq12 | ProofStep::Eq2 | ProofStep::Thm2Final | ProofStep::Bb2Remark
    )
}

fn step_record(l: &Loaded, report: &ProofStepReport) -> Record {
    Record {
        instance_id: l.id.clone(),
        class: l.file.class.as_str().into(),
        dim: l.file.dim,
        step: Some(report.step.as_str().into()),
        r: report.r,
        status: report.status.into(),
        margin: report.verdict.min_gap,
        boundary: report.verdict.relation == LoewnerRelation::Boundary,
        detail: serde_json::to_value(report).expect("report serializes"),
    }
}

fn proofcheck_one(l: &Loaded, c: &ProofcheckConfig, steps: &[ProofStep]) -> Result<Vec<Record>> {
    let base = ProofParams {
        samples: default_z_samples(c.samples),
        tol: c.tol,
        ..ProofParams::default()
    };
    let mut records = Vec::new();
    for &step in steps {
        match step {
            ProofStep::Eq14 => {
                for report in coefficient_bound_eq14(&l.f, c.tol)? {
                    records.push(step_record(l, &report));
                }
            }
            ProofStep::Eq9 | ProofStep::Eq10 => {
                for &k in &c.k {
                    let params = ProofParams { k, ..base.clone() };
                    records.push(step_record(l, &proof_step_validate(&l.f, step, &params)?));
                }
            }
            s if depends_on_r(s) => {
                for r in radii_for(&c.radii, &l.f, false)? {
                    let params = ProofParams { r, ..base.clone() };
                    match proof_step_validate(&l.f, step, &params) {
                        Ok(report) => records.push(step_record(l, &report)),
                        Err(CheckError::PreconditionNotMet(why)) => records.push(Record {
                            instance_id: l.id.clone(),
                            class: l.file.class.as_str().into(),
                            dim: l.file.dim,
                            step: Some(step.as_str().into()),
                            r: Some(r),
                            status: Status::NotApplicable,
                            margin: f64::NAN,
                            boundary: false,
                            detail: serde_json::Value::String(why),
                        }),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            _ => records.push(step_record(l, &proof_step_validate(&l.f, step, &base)?)),
        }
    }
    Ok(records)
}

pub fn proofcheck(args: ProofcheckArgs) -> Result<Exit> {
    let start = Instant::now();
    let config = CampaignConfig::load(args.config.as_deref())?;
    let radii = RadiiSpec::from_args(&args.radii)?
        .or(config.radii.clone())
        .unwrap_or(RadiiSpec::List(vec![1.0 / 3.0]));
    radii.validate()?;
    let k = if !args.k.is_empty() {
        args.k.clone()
    } else if !config.k.is_empty() {
        config.k.clone()
    } else {
        vec![ProofParams::default().k]
    };
    ensure!(k.iter().all(|&k| k >= 1), "k must be at least 1");
    let samples = args.samples.or(config.samples).unwrap_or(64);
    ensure!(samples >= 1, "samples must be at least 1");
    let c = ProofcheckConfig {
        steps: if args.steps.is_empty() { config.steps.clone() } else { args.steps.clone() },
        k,
        radii,
        samples,
        tol: args.tol.or(config.tolerances.loewner),
        inputs: input_refs(&args.files)?,
    };
    let records: Vec<Record> = ordered(
        args.files
            .par_iter()
            .map(|p| {
                let l = load(p, false)?;
                let steps = if c.steps.is_empty() { default_steps(l.file.class)? } else { c.steps.clone() };
                proofcheck_one(&l, &c, &steps).with_context(|| l.id.clone())
            })
            .collect(),
    )?
    .into_iter()
    .flatten()
    .collect();
    let mut reproduce = String::from("bohrlab proofcheck");
    if !c.steps.is_empty() {
        let names: Vec<&str> = c.steps.iter().map(|s| s.as_str()).collect();
        let _ = write!(reproduce, " --steps {}", names.join(","));
    }
    let ks: Vec<String> = c.k.iter().map(|k| k.to_string()).collect();
    let _ = write!(reproduce, " --k {} {} --samples {}", ks.join(","), radii_arg(&c.radii), c.samples);
    if let Some(tol) = c.tol {
        let _ = write!(reproduce, " --tol {tol:e}");
    }
    let _ = write!(reproduce, " {}", file_list(&args.files));
    let mut run = RunRecord::new("proofcheck", &c, reproduce, records);
    if args.timing {
        run.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit_run(&run, args.format, args.out.as_deref())?;
    Ok(Exit::from_summary(&run.summary))
}

#[derive(Debug, Clone, Serialize)]
struct RadiusConfig {
    tol: f64,
    relax: bool,
    inputs: Vec<InputRef>,
}

fn radius_one(l: &Loaded, c: &RadiusConfig) -> Result<Record> {
    if let Err(e) = require_hypotheses(&l.f, HypothesisClass::Thm1) {
        if !c.relax {
            return Err(e.into());
        }
        eprintln!("warning: {}: {e}", l.id);
    }
    let report = RadiusReport::new(&l.f, c.tol)?;
    let status = if report.guaranteed_radius > report.empirical_radius + c.tol {
        Status::Violated
    } else if !report.resolved {
        Status::Inconclusive
    } else {
        Status::Holds
    };
    Ok(Record {
        instance_id: l.id.clone(),
        class: l.file.class.as_str().into(),
        dim: l.file.dim,
        step: None,
        r: Some(report.guaranteed_radius),
        status,
        margin: report.margin,
        boundary: report.margin.abs() <= c.tol,
        detail: serde_json::to_value(&report).expect("report serializes"),
    })
}

pub fn radius(args: RadiusArgs) -> Result<Exit> {
    let start = Instant::now();
    let config = CampaignConfig::load(args.config.as_deref())?;
    let c = RadiusConfig {
        tol: args.tol.or(config.tolerances.bisection).unwrap_or(DEFAULT_BISECTION_TOL),
        relax: args.relax,
        inputs: input_refs(&args.files)?,
    };
    ensure!(c.tol >= 1e-6, "bisection tolerance {} is below 1e-6", c.tol);
    let records = ordered(
        args.files
            .par_iter()
            .map(|p| {
                let l = load(p, c.relax)?;
                radius_one(&l, &c).with_context(|| l.id.clone())
            })
            .collect(),
    )?;
    let reproduce = format!(
        "bohrlab radius --tol {:e}{} {}",
        c.tol,
        if c.relax { " --relax" } else { "" },
        file_list(&args.files)
    );
    let mut run = RunRecord::new("radius", &c, reproduce, records);
    if args.timing {
        run.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    emit_run(&run, args.format, args.out.as_deref())?;
    Ok(Exit::from_summary(&run.summary))
}

/// `start:end:count` (inclusive, evenly spaced) or a comma-separated list.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if let [start, end, count] = parts[..] {
        let start: f64 = start.trim().parse().with_context(|| format!("grid start `{start}`"))?;
        let end: f64 = end.trim().parse().with_context(|| format!("grid end `{end}`"))?;
        let count: usize = count.trim().parse().with_context(|| format!("grid count `{count}`"))?;
        ensure!(count >= 1, "grid count must be at least 1");
        if count == 1 {
            return Ok(vec![start]);
        }
        let step = (end - start) / (count - 1) as f64;
        return Ok((0..count)
            .map(|i| if i + 1 == count { end } else { start + step * i as f64 })
            .collect());
    }
    ensure!(parts.len() == 1, "grid `{spec}` is neither start:end:count nor a list");
    spec.split(',')
        .map(|v| v.trim().parse::<f64>().with_context(|| format!("grid value `{v}`")))
        .collect()
}

fn sharpness_csv(rows: &[SharpnessRow]) -> String {
    let mut out = String::from("lambda,guaranteed,empirical,majorant_beyond,delta,confirmed\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.lambda, r.guaranteed, r.empirical, r.majorant_beyond, r.delta, r.confirmed
        );
    }
    out
}

fn sharpness_md(rows: &[SharpnessRow]) -> String {
    let mut out = String::from(
        "| lambda | guaranteed | empirical | majorant beyond | delta | confirmed |\n|---:|---:|---:|---:|---:|---|\n",
    );
    for r in rows {
        let _ = writeln!(
            out,
            "| {} | {:.9} | {:.9} | {:.9} | {} | {} |",
            r.lambda, r.guaranteed, r.empirical, r.majorant_beyond, r.delta, r.confirmed
        );
    }
    out
}

pub fn sharpness(args: SharpnessArgs) -> Result<Exit> {
    let lambdas = parse_grid(&args.lambdas)?;
    let rows = sharpness_scan(&lambdas, args.delta)?;
    let text = match args.format {
        Format::Csv => sharpness_csv(&rows),
        Format::Md => sharpness_md(&rows),
        Format::Json => to_json(&rows),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(if rows.iter().all(|r| r.confirmed) { Exit::Holds } else { Exit::Violated })
}

/// File written by `search` when a violation is found.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub function: FunctionFile,
    pub relaxation: Relaxation,
    pub instance: usize,
    pub search_seed: u64,
    pub r: f64,
    pub verdict: BohrVerdict,
    pub hypotheses: HypothesisReport,
    pub reproduce: String,
}

pub fn search(args: SearchArgs) -> Result<Exit> {
    let config = CampaignConfig::load(args.config.as_deref())?;
    ensure!(args.budget >= 1, "budget must be at least 1");
    let dim = args.dim.or(config.dims.first().copied()).unwrap_or(2);
    let seed = config.resolve_seed(args.seed)?;
    let outcome = counterexample_search(args.relaxation, dim, args.budget, seed, args.relax)?;
    eprintln!(
        "{}: tested {}, skipped {} of {}",
        args.relaxation.as_str(),
        outcome.tested,
        outcome.skipped,
        args.budget
    );
    let Some(w) = outcome.witness else {
        println!("none");
        return Ok(Exit::Holds);
    };
    debug_assert_eq!(w.verdict.status, BohrStatus::Violated);
    let path = args
        .out
        .unwrap_or_else(|| PathBuf::from(format!("witness_{}_s{seed}.json", args.relaxation.as_str())));
    let witness = WitnessFile {
        reproduce: format!("bohrlab verify --theorem thm1 --relax --r {} {}", w.r, path.display()),
        function: w.file,
        relaxation: args.relaxation,
        instance: w.instance,
        search_seed: seed,
        r: w.r,
        verdict: w.verdict,
        hypotheses: w.hypotheses,
    };
    emit(Some(&path), &to_json(&witness))?;
    println!("{}", path.display());
    Ok(Exit::Witness)
}

pub fn report(args: ReportArgs) -> Result<Exit> {
    let runs = args
        .files
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let run: RunRecord =
                serde_json::from_str(&text).with_context(|| format!("{}: not a run record", p.display()))?;
            Ok((p.display().to_string(), run))
        })
        .collect::<Result<Vec<_>>>()?;
    let report = Report::aggregate(&runs);
    let text = match args.format {
        Format::Json => to_json(&report),
        Format::Csv => report.to_csv(),
        Format::Md => report.to_markdown(),
    };
    emit(args.out.as_deref(), &text)?;
    Ok(Exit::from_summary(&report.total))
}
