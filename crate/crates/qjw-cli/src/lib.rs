//! Front end for the `qjw` toolkit. [`run`] turns parsed arguments into a
//! rendered report plus a pass/fail flag; `main` only handles writing and
//! exit codes.
#![forbid(unsafe_code)]

use clap::{Args, Parser, Subcommand, ValueEnum};
use qjw::designs::{
    build_mub, build_mum, build_sic, build_sim, design_povm, mum_constants, sim_constants, verify_design,
    ConicalDesign, DesignFile, DesignReport,
};
use qjw::entanglement::{
    concurrence_from_design, concurrence_schmidt, isotropic_state, prob_norm, product_povm_probs, schmidt,
    werner_state, witness_tests, witnesses_from_design,
};
use qjw::jordan::{
    canonical_tensor_with, check_reversible_with, standard_embedding, tensor_table, universal_envelope,
    universal_tensor, ClosureOptions, EjaDescriptor, Simple, UniversalTensorOutcome, DEFAULT_BUDGET, VIOLATION_TOL,
};
use qjw::linalg::{pure_state_op, random_pure_state, seeded_rng, HermitianOp};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: not a design file: {source}")]
    Parse { path: String, source: serde_json::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Qjw(#[from] qjw::Error),
}

impl CliError {
    /// 1 for refused or failed verification, 2 for bad input, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        use qjw::Error as E;
        match self {
            Self::Usage(_) | Self::Parse { .. } => 2,
            Self::Io { .. } | Self::Csv(_) => 3,
            Self::Qjw(E::InvalidParameter(_) | E::Unsupported(_) | E::DimensionMismatch { .. }) => 2,
            Self::Qjw(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(name = "qjw", version, about = "Conical designs, entanglement tests and Jordan-algebra composites")]
pub struct Cli {
    /// Tolerance override; each command documents its default.
    #[arg(long, global = true, env = "QJW_TOL")]
    pub tol: Option<f64>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Allow long-running cases such as the two-quabit universal tensor.
    #[arg(long, global = true)]
    pub long: bool,
    /// Write the report here (atomically) instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Report format; tables default to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build or verify conical 2-designs.
    #[command(subcommand)]
    Design(DesignCmd),
    /// Concurrence tables and witness evaluations.
    #[command(subcommand)]
    Entangle(EntangleCmd),
    /// Tensor products, envelopes and reversibility of Jordan algebras.
    #[command(subcommand)]
    Jordan(JordanCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignKind {
    Sim,
    Mum,
    Sic,
    Mub,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignCmd {
    /// Build a design and check it (default tol 1e-9).
    Build(BuildArgs),
    /// Check all design conditions of a saved design (default tol 1e-9).
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub kind: DesignKind,
    #[arg(long = "d")]
    pub d: usize,
    /// Contraction parameter for sim; defaults to 1/(d-1).
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Contraction parameter for mum; defaults to 1/(d-1).
    #[arg(long)]
    pub eta: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    /// A report written by `design build`, or a bare design file.
    pub file: PathBuf,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EntangleCmd {
    /// Concurrence of random pure states by Schmidt coefficients and by design
    /// probabilities (default tol 1e-8 on the difference).
    Table(TableArgs),
    /// Linear and quadratic witness tests on a named state (default tol 1e-10).
    Witness(WitnessArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TableArgs {
    #[arg(long = "d")]
    pub d: usize,
    #[arg(long, value_enum, default_value = "sic")]
    pub design: DesignKind,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Parameter for sim/mum designs; defaults to 1/(d-1).
    #[arg(long)]
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Werner,
    Isotropic,
    Maxmixed,
}

#[derive(Debug, Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long, value_enum)]
    pub state: StateKind,
    #[arg(long = "d")]
    pub d: usize,
    /// Werner antisymmetric weight.
    #[arg(long)]
    pub p: Option<f64>,
    /// Isotropic fidelity.
    #[arg(long)]
    pub f: Option<f64>,
    /// Design behind the witnesses; sic when available, else sim.
    #[arg(long, value_enum)]
    pub design: Option<DesignKind>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum JordanCmd {
    /// Canonical tensor product of two standardly embedded algebras; `--tol`
    /// sets the closure tolerance (default 1e-8).
    Tensor(TensorArgs),
    /// Universal C*-envelope of an algebra.
    Envelope(EnvelopeArgs),
    /// Universal tensor product inside the tensor product of envelopes.
    Universal(UniversalArgs),
    /// Reversibility of a standard embedding (default violation tol 1e-8).
    Reversible(ReversibleArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TensorArgs {
    /// Left factor, e.g. `quat:2` or `real:2+complex:2`.
    #[arg(long, required_unless_present = "table")]
    pub a: Option<String>,
    #[arg(long, required_unless_present = "table")]
    pub b: Option<String>,
    /// Compute every table cell with factors up to QuatHerm(2), ComplexHerm(3), RealSym(3).
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub table: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct EnvelopeArgs {
    #[arg(long)]
    pub a: String,
}

#[derive(Debug, Args, Serialize)]
pub struct UniversalArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
}

#[derive(Debug, Args, Serialize)]
pub struct ReversibleArgs {
    /// Spin factor `V_k`.
    #[arg(long, conflicts_with = "a", required_unless_present = "a")]
    pub spin: Option<usize>,
    /// Any descriptor instead of a spin factor.
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub maxlen: usize,
    /// Random words per length beyond the exhaustive range.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

/// A finished command: the rendered report and whether every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub rendered: String,
    pub ok: bool,
    /// One-line explanation for stderr when `ok` is false.
    pub message: Option<String>,
}

fn meta(cli: &Cli, tol: f64) -> Value {
    let (group, name) = command_name(&cli.command);
    json!({
        "tool": "qjw",
        "version": env!("CARGO_PKG_VERSION"),
        "command": format!("{group} {name}"),
        "params": serde_json::to_value(&cli.command).unwrap_or(Value::Null),
        "seed": cli.seed,
        "tolerance": tol,
        "long": cli.long,
    })
}

fn command_name(c: &Command) -> (&'static str, &'static str) {
    match c {
        Command::Design(DesignCmd::Build(_)) => ("design", "build"),
        Command::Design(DesignCmd::Verify(_)) => ("design", "verify"),
        Command::Entangle(EntangleCmd::Table(_)) => ("entangle", "table"),
        Command::Entangle(EntangleCmd::Witness(_)) => ("entangle", "witness"),
        Command::Jordan(JordanCmd::Tensor(_)) => ("jordan", "tensor"),
        Command::Jordan(JordanCmd::Envelope(_)) => ("jordan", "envelope"),
        Command::Jordan(JordanCmd::Universal(_)) => ("jordan", "universal"),
        Command::Jordan(JordanCmd::Reversible(_)) => ("jordan", "reversible"),
    }
}

fn default_tol(c: &Command) -> f64 {
    match c {
        Command::Design(_) => 1e-9,
        Command::Entangle(EntangleCmd::Table(_)) => 1e-8,
        Command::Entangle(EntangleCmd::Witness(_)) => WITNESS_TOL,
        Command::Jordan(JordanCmd::Reversible(_)) => VIOLATION_TOL,
        Command::Jordan(_) => ClosureOptions::default().tol,
    }
}

/// What a command produced before rendering.
enum Body {
    Json(Vec<Value>),
    Csv { header: Vec<&'static str>, rows: Vec<Vec<String>> },
}

struct Done {
    body: Body,
    ok: bool,
    message: Option<String>,
}

impl Done {
    fn json(results: Vec<Value>, ok: bool, message: Option<String>) -> Self {
        Self { body: Body::Json(results), ok, message }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let tol = cli.tol.unwrap_or_else(|| default_tol(&cli.command));
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(usage(format!("tolerance must be positive and finite, got {tol}")));
    }
    let done = match &cli.command {
        Command::Design(DesignCmd::Build(a)) => design_build(a, cli.seed, tol)?,
        Command::Design(DesignCmd::Verify(a)) => design_verify(a, tol)?,
        Command::Entangle(EntangleCmd::Table(a)) => entangle_table(a, cli.seed, tol)?,
        Command::Entangle(EntangleCmd::Witness(a)) => entangle_witness(a, cli.seed, tol)?,
        Command::Jordan(JordanCmd::Tensor(a)) => jordan_tensor(a, cli.seed, tol)?,
        Command::Jordan(JordanCmd::Envelope(a)) => jordan_envelope(a)?,
        Command::Jordan(JordanCmd::Universal(a)) => jordan_universal(a, cli.long, cli.seed)?,
        Command::Jordan(JordanCmd::Reversible(a)) => jordan_reversible(a, cli.seed, tol)?,
    };
    let m = meta(cli, tol);
    let rendered = match (&done.body, cli.format) {
        (Body::Json(results), None | Some(Format::Json)) => render_json(m, results.clone()),
        (Body::Json(_), Some(Format::Csv)) => {
            return Err(usage(format!("{} has no csv form", m["command"].as_str().unwrap_or(""))))
        }
        (Body::Csv { header, rows }, Some(Format::Csv) | None) => render_csv(&m, header, rows)?,
        (Body::Csv { header, rows }, Some(Format::Json)) => {
            let results = rows
                .iter()
                .map(|r| {
                    Value::Object(header.iter().map(|h| h.to_string()).zip(r.iter().map(|v| cell_value(v))).collect())
                })
                .collect();
            render_json(m, results)
        }
    };
    Ok(Outcome { rendered, ok: done.ok, message: done.message })
}

fn cell_value(s: &str) -> Value {
    if let Ok(b) = s.parse::<bool>() {
        return Value::Bool(b);
    }
    if let Ok(n) = s.parse::<u64>() {
        return Value::from(n);
    }
    s.parse::<f64>()
        .ok()
        .and_then(|x| serde_json::Number::from_f64(x).map(Value::Number))
        .unwrap_or_else(|| Value::String(s.to_string()))
}

fn render_json(meta: Value, results: Vec<Value>) -> String {
    let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "results": results }))
        .expect("reports are plain JSON values");
    s.push('\n');
    s
}

fn render_csv(meta: &Value, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut out = format!(
        "# qjw {} {} seed={} tol={:e}\n",
        meta["version"].as_str().unwrap_or(""),
        meta["command"].as_str().unwrap_or(""),
        meta["seed"],
        meta["tolerance"].as_f64().unwrap_or(f64::NAN)
    );
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io { path: "<csv buffer>".into(), source: e.into_error() })?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(out)
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let io = |source| CliError::Io { path: path.display().to_string(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn default_param(d: usize, given: Option<f64>) -> f64 {
    given.unwrap_or(1.0 / (d as f64 - 1.0))
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(usage(format!("--d must be at least 2, got {d}")));
    }
    Ok(())
}

fn make_design(
    kind: DesignKind,
    d: usize,
    param: Option<f64>,
    seed: u64,
) -> Result<(ConicalDesign, Option<(f64, f64)>)> {
    check_d(d)?;
    Ok(match kind {
        DesignKind::Sim => {
            let k = default_param(d, param);
            (build_sim(d, k, seed)?, Some(sim_constants(d, k)))
        }
        DesignKind::Mum => {
            let e = default_param(d, param);
            (build_mum(d, e, seed)?, Some(mum_constants(d, e)))
        }
        DesignKind::Sic => (ConicalDesign::new(build_sic(d)?)?, None),
        DesignKind::Mub => (ConicalDesign::new(build_mub(d)?)?, None),
    })
}

fn failing_conditions(r: &DesignReport) -> String {
    if let Some(p) = &r.problem {
        return p.clone();
    }
    let c = &r.conditions;
    let res = &r.residuals;
    let mut bad: Vec<String> =
        [("i", c.i, res.i), ("ii", c.ii, res.ii), ("iii", c.iii, res.iii), ("iv", c.iv, res.iv), ("v", c.v, res.v)]
            .iter()
            .filter(|(_, ok, _)| !ok)
            .map(|(n, _, r)| format!("({n}) residual {r:.3e}"))
            .collect();
    if !r.spanning {
        bad.push("not spanning".into());
    }
    format!("design conditions failed: {}", bad.join(", "))
}

fn design_build(a: &BuildArgs, seed: u64, tol: f64) -> Result<Done> {
    let param = match a.kind {
        DesignKind::Sim => a.kappa,
        DesignKind::Mum => a.eta,
        _ => None,
    };
    let (design, expected) = make_design(a.kind, a.d, param, seed)?;
    let report = verify_design(design.ops(), tol);
    let mut ok = report.pass;
    let mut message = (!ok).then(|| failing_conditions(&report));
    let expected = expected.map(|(ks, ka)| {
        let err = (ks - report.ks).abs().max((ka - report.ka).abs());
        if err > tol {
            ok = false;
            message = Some(format!("constants differ from the closed form by {err:.3e}"));
        }
        json!({ "ks": ks, "ka": ka, "error": err })
    });
    let result = json!({
        "design": design.to_file(),
        "expected": expected,
        "verification": report,
    });
    Ok(Done::json(vec![result], ok, message))
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn design_verify(a: &VerifyArgs, tol: f64) -> Result<Done> {
    let text = read_to_string(&a.file)?;
    let path = a.file.display().to_string();
    let parse = |source| CliError::Parse { path: path.clone(), source };
    let v: Value = serde_json::from_str(&text).map_err(parse)?;
    let inner = match v.get("results").and_then(|r| r.get(0)).and_then(|r| r.get("design")) {
        Some(d) => d.clone(),
        None => v,
    };
    let file: DesignFile = serde_json::from_value(inner).map_err(parse)?;
    let report = match ConicalDesign::from_file(&file) {
        Ok(d) => verify_design(d.ops(), tol),
        Err(e) => {
            let msg = format!("design elements are invalid: {e}");
            return Ok(Done::json(vec![json!({ "file": path, "pass": false, "problem": msg })], false, Some(msg)));
        }
    };
    let ok = report.pass;
    let message = (!ok).then(|| failing_conditions(&report));
    Ok(Done::json(vec![json!({ "file": path, "verification": report })], ok, message))
}

fn fmt(x: f64) -> String {
    format!("{x:e}")
}

const WITNESS_TOL: f64 = 1e-10;

const TABLE_HEADER: [&str; 9] =
    ["state", "prob_norm", "c_schmidt", "c_design", "delta", "lin_below", "lin_above", "quad_below", "quad_above"];

fn entangle_table(a: &TableArgs, seed: u64, tol: f64) -> Result<Done> {
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let (design, _) = make_design(a.design, a.d, a.kappa, seed)?;
    let povm = design_povm(&design)?;
    let k = ConicalDesign::new(povm.effects().to_vec())?.constants();
    let w = witnesses_from_design(&design)?;
    let mut rng = seeded_rng(seed);
    let mut rows = Vec::with_capacity(a.samples);
    let mut worst = 0.0f64;
    for id in 0..a.samples {
        let psi = random_pure_state(a.d * a.d, &mut rng);
        let pn = prob_norm(&product_povm_probs(&psi, &povm)?);
        let cs = concurrence_schmidt(&schmidt(&psi)?.coefficients);
        let cd = concurrence_from_design(pn, k.ks, k.ka)?;
        let delta = (cd - cs).abs();
        worst = worst.max(delta);
        let v = witness_tests(&pure_state_op(&psi), &w, WITNESS_TOL)?;
        let mut row = vec![id.to_string(), fmt(pn), fmt(cs), fmt(cd), fmt(delta)];
        row.extend([v.lin_below, v.lin_above, v.quad_below, v.quad_above].map(|b| b.to_string()));
        rows.push(row);
    }
    let ok = worst < tol;
    let message = (!ok).then(|| format!("largest concurrence difference {worst:.3e} exceeds {tol:.1e}"));
    Ok(Done { body: Body::Csv { header: TABLE_HEADER.to_vec(), rows }, ok, message })
}

fn entangle_witness(a: &WitnessArgs, seed: u64, tol: f64) -> Result<Done> {
    check_d(a.d)?;
    let d = a.d;
    let kind = a.design.unwrap_or(if matches!(d, 2 | 3) { DesignKind::Sic } else { DesignKind::Sim });
    let (design, _) = make_design(kind, d, None, seed)?;
    let w = witnesses_from_design(&design)?;
    let rho = match a.state {
        StateKind::Werner => werner_state(d, a.p.ok_or_else(|| usage("--state werner needs --p"))?)?,
        StateKind::Isotropic => isotropic_state(d, a.f.ok_or_else(|| usage("--state isotropic needs --f"))?)?,
        StateKind::Maxmixed => HermitianOp::identity(d * d).scaled(1.0 / (d * d) as f64),
    };
    let v = witness_tests(&rho, &w, tol)?;
    let result = json!({
        "state": a.state,
        "d": d,
        "design": kind,
        "kplus": w.kplus,
        "kminus": w.kminus,
        "bounds": w.bounds,
        "verdicts": v,
        "entanglement_detected": v.any(),
    });
    Ok(Done::json(vec![result], true, None))
}

fn parse_desc(s: &str) -> Result<EjaDescriptor> {
    s.parse().map_err(|e: qjw::Error| usage(format!("cannot parse algebra {s:?}: {e}")))
}

struct Cell {
    a: String,
    b: String,
    predicted: Option<String>,
    computed: String,
    descriptor: EjaDescriptor,
    dim: usize,
    rank: usize,
    status: &'static str,
}

fn tensor_cell(a: &EjaDescriptor, b: &EjaDescriptor, tol: f64, seed: u64) -> Result<Cell> {
    let ea = standard_embedding(a)?;
    let eb = standard_embedding(b)?;
    let opts = ClosureOptions { tol, ..Default::default() };
    let t = canonical_tensor_with(&ea, &eb, &opts, seed)?;
    let status = match t.matches_table() {
        Some(true) => "match",
        Some(false) => "mismatch",
        None => "no table entry",
    };
    Ok(Cell {
        a: a.to_string(),
        b: b.to_string(),
        predicted: t.predicted.as_ref().map(|p| p.to_string()),
        computed: t.descriptor().to_string(),
        descriptor: t.descriptor().clone(),
        dim: t.dim(),
        rank: t.descriptor().rank(),
        status,
    })
}

fn jordan_tensor(a: &TensorArgs, seed: u64, tol: f64) -> Result<Done> {
    if a.table {
        let factors = [Simple::real(2), Simple::real(3), Simple::complex(2), Simple::complex(3), Simple::quat(2)];
        let mut rows = Vec::new();
        let mut ok = true;
        for (i, x) in factors.iter().enumerate() {
            for y in &factors[i..] {
                let c = tensor_cell(&EjaDescriptor::simple(*x), &EjaDescriptor::simple(*y), tol, seed)?;
                let want = tensor_table(*x, *y);
                let exact = want.is_some_and(|w| w.dim() == c.dim && w.rank() == c.rank);
                ok &= exact && c.status == "match";
                rows.push(vec![
                    c.a,
                    c.b,
                    c.predicted.unwrap_or_default(),
                    c.dim.to_string(),
                    c.rank.to_string(),
                    c.status.into(),
                ]);
            }
        }
        let message = (!ok).then(|| "some table cells disagree with the prediction".to_string());
        return Ok(Done {
            body: Body::Csv { header: vec!["A", "B", "predicted", "computed_dim", "computed_rank", "status"], rows },
            ok,
            message,
        });
    }
    let (sa, sb) = (a.a.as_deref().unwrap_or_default(), a.b.as_deref().unwrap_or_default());
    let c = tensor_cell(&parse_desc(sa)?, &parse_desc(sb)?, tol, seed)?;
    let ok = c.status != "mismatch";
    let message = (!ok)
        .then(|| format!("computed {} but the table predicts {}", c.computed, c.predicted.clone().unwrap_or_default()));
    let result = json!({
        "a": c.a,
        "b": c.b,
        "predicted": c.predicted,
        "computed": c.computed,
        "descriptor": c.descriptor,
        "dim": c.dim,
        "rank": c.rank,
        "status": c.status,
        "label": "identified (invariant-level)",
    });
    Ok(Done::json(vec![result], ok, message))
}

fn jordan_envelope(a: &EnvelopeArgs) -> Result<Done> {
    let desc = parse_desc(&a.a)?;
    let env = universal_envelope(&desc)?;
    let ok = env.generates_ambient() != Some(false);
    let message = (!ok).then(|| "the universal embedding does not generate the envelope".to_string());
    let result = json!({
        "algebra": desc.to_string(),
        "envelope": env.description(),
        "shape": env.shape(),
        "involution": env.involution.describe(),
        "expected_complex_dim": env.expected_complex_dim,
        "verified_complex_dim": env.verified_complex_dim,
        "generates_ambient": env.generates_ambient(),
    });
    Ok(Done::json(vec![result], ok, message))
}

fn jordan_universal(a: &UniversalArgs, long: bool, seed: u64) -> Result<Done> {
    let (da, db) = (parse_desc(&a.a)?, parse_desc(&a.b)?);
    let budget = if long { usize::MAX } else { DEFAULT_BUDGET };
    let result = match universal_tensor(&da, &db, budget, seed)? {
        UniversalTensorOutcome::Computed { shape, dim, identification } => json!({
            "a": da.to_string(),
            "b": db.to_string(),
            "status": "computed",
            "shape": shape,
            "dim": dim,
            "computed": identification.descriptor.to_string(),
            "summand_dims": identification.summand_dims,
            "summand_ranks": identification.summand_ranks,
        }),
        UniversalTensorOutcome::Skipped { reason, herm_len } => json!({
            "a": da.to_string(),
            "b": db.to_string(),
            "status": "skipped",
            "reason": format!("{reason}; rerun with --long"),
            "herm_len": herm_len,
        }),
    };
    Ok(Done::json(vec![result], true, None))
}

fn jordan_reversible(a: &ReversibleArgs, seed: u64, tol: f64) -> Result<Done> {
    let desc = match (a.spin, &a.a) {
        (Some(k), _) => EjaDescriptor::simple(Simple::Spin { k }),
        (None, Some(s)) => parse_desc(s)?,
        (None, None) => return Err(usage("give --spin or --a")),
    };
    if let Some(k) = a.spin {
        if k < 2 {
            return Err(usage(format!("--spin needs k >= 2, got {k}")));
        }
    }
    let e = standard_embedding(&desc)?;
    let r = check_reversible_with(&e, a.maxlen, a.samples, seed, tol)?;
    let result = json!({
        "algebra": desc.to_string(),
        "reversible": r.reversible,
        "witness": r.witness_label,
        "words_checked": r.words_checked,
        "max_residual": r.max_residual,
        "max_len": r.max_len,
    });
    Ok(Done::json(vec![result], true, None))
}
