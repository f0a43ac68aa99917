//! Batch command surface: bound tables, certification runs and oracle
//! solves.
//!
//! Exit codes: 0 on success, 1 when a certificate fails or a solver does not
//! converge, 2 on usage and parse errors. Machine-readable output goes to
//! stdout, progress and diagnostics to stderr.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{bounds_for, polya_sandwich, BoundResult, DEFAULT_TERMS, KNOWN_TAGS};
use crate::certifier::{
    write_certificate, Certificate, Claim, ExportFormat, Strategy, MAX_DEPTH_LIMIT,
};
use crate::error::Error;
use crate::interval::constants::{hex_f64, table};
use crate::oracle::{
    disc_exact, extrapolate, rect_series, solve_region, BoundaryTreatment, ConvexRegion, SolverConfig,
};
use crate::shapes::{ShapeKind, ShapeSpec};
use crate::Interval;

/// Environment variable naming the certificate output directory.
pub const CERT_DIR_ENV: &str = "POLYA_CERT_DIR";

#[derive(Debug, Parser)]
#[command(name = "polya", version, about = "Certified bounds on the Polya functional lambda*T/|Omega|")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the closed-form bounds for one shape.
    Bound(BoundArgs),
    /// Run a covering certification and write the certificate.
    Certify(CertifyArgs),
    /// Finite-difference estimates of lambda, T and M.
    Oracle(OracleArgs),
    /// Print the certified constant table as JSON.
    Constants,
}

#[derive(Debug, Args)]
struct BoundArgs {
    /// Shape spec such as `triangle:beta=0.7` or `slab:m=2,w=0.1,rho=1`.
    spec: String,
    /// Comma-separated equation tags, or `all`.
    #[arg(long, default_value = "all")]
    which: String,
    /// Emit a JSON array instead of an aligned table.
    #[arg(long)]
    json: bool,
    /// Series truncation for bounds that need one.
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    terms: u32,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Formats {
    Json,
    Csv,
    Both,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    /// theorem5, t11 or theorem4.
    claim: String,
    /// Subdivisions of the initial covering.
    #[arg(long)]
    cells: Option<u32>,
    /// Threshold as a decimal; the upper end of its enclosure is used.
    #[arg(long)]
    threshold: Option<String>,
    /// Series truncation.
    #[arg(long)]
    terms: Option<u32>,
    /// Bisect failing cells.
    #[arg(long, conflicts_with = "uniform")]
    adaptive: bool,
    /// Fixed covering without bisection.
    #[arg(long)]
    uniform: bool,
    #[arg(long)]
    max_depth: Option<u32>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Output directory; defaults to $POLYA_CERT_DIR, then ./certs.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Formats::Both)]
    format: Formats,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Boundary {
    Ghost,
    Dropped,
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Shape spec; with --sweep it supplies the fixed parameters.
    spec: Option<String>,
    /// Grid spacing.
    #[arg(long)]
    h: Option<f64>,
    /// Grid cells across the smaller bounding-box side, used when --h is absent.
    #[arg(long, default_value_t = 32.0)]
    across: f64,
    #[arg(long, value_enum, default_value_t = Boundary::Ghost)]
    boundary: Boundary,
    /// Report the series or closed-form values instead of solving.
    #[arg(long)]
    series: bool,
    /// Also solve at h/2 and Richardson-extrapolate.
    #[arg(long)]
    extrapolate: bool,
    /// Richardson order.
    #[arg(long, default_value_t = 2)]
    order: u32,
    /// `kind.param=lo:hi:n`, e.g. `triangle.beta=0.05:1.0:20`.
    #[arg(long)]
    sweep: Option<String>,
    /// Shapes solved concurrently in sweep mode; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, default_value_t = 1e-10)]
    torsion_tol: f64,
    #[arg(long, default_value_t = 1e-10)]
    lambda_tol: f64,
    #[arg(long, default_value_t = 200_000)]
    max_cg: usize,
    #[arg(long, default_value_t = 5_000)]
    max_power: usize,
}

/// Record of one run, written next to the certificates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub parameters: BTreeMap<String, Value>,
    pub artifacts: Vec<String>,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub config_digest: String,
}

enum Failure {
    Usage(String),
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::IoFailure(_) => Failure::Failed(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Failed(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (including the program name), writing to
/// `out` and `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let command_line: Vec<String> = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let result = match cli.command {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Certify(a) => cmd_certify(&a, &command_line, out, err),
        Command::Oracle(a) => cmd_oracle(&a, out, err),
        Command::Constants => writeln!(out, "{}", table().to_json()).map(|_| 0).map_err(Failure::from),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Failed(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

/// Runs the process command line against the standard streams.
pub fn main_exit_code() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn parse_spec(s: &str) -> std::result::Result<ShapeSpec, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

fn selected_tags(which: &str) -> std::result::Result<Option<Vec<String>>, Failure> {
    if which.trim() == "all" {
        return Ok(None);
    }
    let tags: Vec<String> = which.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect();
    if let Some(bad) = tags.iter().find(|t| !KNOWN_TAGS.contains(&t.as_str())) {
        return Err(Failure::Usage(format!("unknown equation tag {bad:?}; known: {}", KNOWN_TAGS.join(","))));
    }
    Ok(Some(tags))
}

fn fmt_row(r: &BoundResult) -> String {
    format!(
        "{:<18} {:<11} {:<11} {:>22.15e} {:>22.15e} {:<5} {}",
        r.equation_tag,
        match r.kind {
            crate::bounds::BoundKind::UpperBound => "upper",
            crate::bounds::BoundKind::LowerBound => "lower",
        },
        format!("{:?}", r.quantity),
        r.value.lo(),
        r.value.hi(),
        r.valid,
        r.reason.as_deref().unwrap_or("")
    )
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Outcome {
    let spec = parse_spec(&a.spec)?;
    let tags = selected_tags(&a.which)?;
    let rows: Vec<BoundResult> = bounds_for(&spec, a.terms)?
        .into_iter()
        .filter(|r| tags.as_ref().is_none_or(|t| t.contains(&r.equation_tag)))
        .collect();
    if rows.is_empty() {
        return Err(Failure::Usage(format!("no bound among {:?} applies to {}", a.which, spec.name())));
    }
    if a.json {
        let arr: Vec<Value> = rows.iter().map(BoundResult::to_json).collect();
        writeln!(out, "{}", serde_json::to_string_pretty(&arr).map_err(Error::from)?)?;
    } else {
        writeln!(out, "# {spec}")?;
        writeln!(
            out,
            "{:<18} {:<11} {:<11} {:>22} {:>22} {:<5} reason",
            "tag", "kind", "quantity", "lo", "hi", "valid"
        )?;
        for r in &rows {
            writeln!(out, "{}", fmt_row(r))?;
        }
    }
    Ok(0)
}

fn decimal_param(text: &str) -> std::result::Result<(Interval, Value), Failure> {
    let x = Interval::from_decimal(text)?;
    Ok((x, json!({ "decimal": text, "lo_hex": hex_f64(x.lo()), "hi_hex": hex_f64(x.hi()) })))
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn cert_dir(a: &CertifyArgs) -> PathBuf {
    a.out
        .clone()
        .or_else(|| std::env::var_os(CERT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("certs"))
}

fn failing_cells(c: &Certificate) -> Vec<Value> {
    c.cells
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.pass)
        .map(|(i, r)| {
            json!({
                "index": i,
                "lo": r.cell.lo(),
                "hi": r.cell.hi(),
                "value_lo": r.value.map(|v| v.lo()),
                "value_hi": r.value.map(|v| v.hi()),
            })
        })
        .collect()
}

fn cmd_certify(a: &CertifyArgs, command_line: &[String], out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let started = unix_now();
    let claim: Claim = a.claim.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let mut p = claim.default_params();
    let mut parameters = BTreeMap::new();
    if let Some(c) = a.cells {
        if c == 0 {
            return Err(Failure::Usage("--cells must be positive".into()));
        }
        p.cells = c;
    }
    if let Some(t) = &a.threshold {
        let (x, echo) = decimal_param(t)?;
        p.threshold = x.hi();
        parameters.insert("threshold".to_string(), echo);
    } else {
        parameters.insert("threshold".to_string(), json!({ "hex": hex_f64(p.threshold) }));
    }
    if let Some(k) = a.terms {
        p.terms = k;
    }
    if a.adaptive {
        p.strategy = Strategy::AdaptiveBisect;
    }
    if a.uniform {
        p.strategy = Strategy::UniformMidrad;
    }
    if let Some(d) = a.max_depth {
        if d > MAX_DEPTH_LIMIT {
            return Err(Failure::Usage(format!("--max-depth above {MAX_DEPTH_LIMIT}")));
        }
        p.max_depth = d;
    }
    if a.jobs == 0 {
        return Err(Failure::Usage("--jobs must be positive".into()));
    }
    parameters.insert("claim".to_string(), json!(claim.claim_id()));
    parameters.insert("cells".to_string(), json!(p.cells));
    parameters.insert("terms".to_string(), json!(p.terms));
    parameters.insert("strategy".to_string(), json!(p.strategy));
    parameters.insert("max_depth".to_string(), json!(p.max_depth));
    parameters.insert("jobs".to_string(), json!(a.jobs));

    let t0 = Instant::now();
    let cert = claim.certify(&p, a.jobs)?;
    let secs = t0.elapsed().as_secs_f64();
    writeln!(
        err,
        "{}: {} cells, passed={}, covered={}, {:.2}s",
        claim.claim_id(),
        cert.cells.len(),
        cert.passed,
        cert.covered,
        secs
    )?;

    let dir = cert_dir(a);
    std::fs::create_dir_all(&dir)?;
    let formats: &[ExportFormat] = match a.format {
        Formats::Json => &[ExportFormat::Json],
        Formats::Csv => &[ExportFormat::Csv],
        Formats::Both => &[ExportFormat::Json, ExportFormat::Csv],
    };
    let mut artifacts = Vec::new();
    for &f in formats {
        let path = write_certificate(&cert, &dir, f)?;
        artifacts.push(path.display().to_string());
    }
    let manifest = RunManifest {
        command_line: command_line.to_vec(),
        parameters,
        artifacts: artifacts.clone(),
        started_unix: started,
        finished_unix: unix_now(),
        config_digest: cert.config_digest.clone(),
    };
    let manifest_path = write_manifest(&manifest, &dir, claim.claim_id())?;

    let failures = failing_cells(&cert);
    let summary = json!({
        "claim": cert.claim_id,
        "passed": cert.passed,
        "covered": cert.covered,
        "cells": cert.cells.len(),
        "min_value": cert.min_value(),
        "config_digest": cert.config_digest,
        "artifacts": artifacts,
        "manifest": manifest_path.display().to_string(),
        "failing_cells": failures,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&summary).map_err(Error::from)?)?;
    Ok(if cert.passed { 0 } else { 1 })
}

/// Writes `manifest_<claim>_<digest>.json` into `dir`.
pub fn write_manifest(m: &RunManifest, dir: &Path, claim_id: &str) -> crate::Result<PathBuf> {
    let path = dir.join(format!("manifest_{claim_id}_{}.json", m.config_digest));
    let mut text = serde_json::to_string_pretty(m)?;
    text.push('\n');
    std::fs::write(&path, text)?;
    Ok(path)
}

fn solver_config(a: &OracleArgs) -> SolverConfig {
    SolverConfig {
        torsion_tol: a.torsion_tol,
        lambda_tol: a.lambda_tol,
        max_cg_iterations: a.max_cg,
        max_power_iterations: a.max_power,
    }
}

fn boundary(a: &OracleArgs) -> BoundaryTreatment {
    match a.boundary {
        Boundary::Ghost => BoundaryTreatment::Ghost,
        Boundary::Dropped => BoundaryTreatment::Dropped,
    }
}

fn grid_h(a: &OracleArgs, region: &ConvexRegion) -> std::result::Result<f64, Failure> {
    let h = match a.h {
        Some(h) => h,
        None => {
            let [x0, y0, x1, y1] = region.bbox;
            (x1 - x0).min(y1 - y0) / a.across
        }
    };
    if !(h.is_finite() && h > 0.0) {
        return Err(Failure::Usage(format!("grid spacing {h} is not positive")));
    }
    Ok(h)
}

fn series_json(spec: &ShapeSpec) -> std::result::Result<Value, Failure> {
    match spec.kind {
        ShapeKind::Rect { a, b } | ShapeKind::Square { s: a @ b } => {
            let s = rect_series(a, b, 200);
            let area = a * b;
            Ok(json!({
                "shape": spec.to_string(),
                "lambda": s.lambda_exact,
                "T": s.t,
                "M": s.m,
                "T_tail": s.t_tail,
                "M_tail": s.m_tail,
                "ratio": s.lambda_exact * s.t / area,
                "lambda_M": s.lambda_exact * s.m,
            }))
        }
        ShapeKind::Disc { r } => {
            let (t, m) = disc_exact(r);
            let j = crate::interval::constants::bessel_zero(0)?.mid();
            let lambda = j * j / (r * r);
            let area = std::f64::consts::PI * r * r;
            Ok(json!({
                "shape": spec.to_string(),
                "lambda": lambda,
                "T": t,
                "M": m,
                "ratio": lambda * t / area,
                "lambda_M": lambda * m,
            }))
        }
        _ => Err(Failure::Usage(format!("no series reference for {}", spec.name()))),
    }
}

fn cmd_oracle(a: &OracleArgs, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    if let Some(sw) = &a.sweep {
        return cmd_sweep(a, sw, out, err);
    }
    let Some(text) = &a.spec else {
        return Err(Failure::Usage("oracle needs a shape spec or --sweep".into()));
    };
    let spec = parse_spec(text)?;
    if a.series {
        let v = series_json(&spec)?;
        writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
        return Ok(0);
    }
    let region = ConvexRegion::from_shape(&spec)?;
    let h = grid_h(a, &region)?;
    let cfg = solver_config(a);
    let t0 = Instant::now();
    let sol = solve_region(region.clone(), h, boundary(a), &cfg)?;
    let mut v = sol.summary_json();
    v["shape"] = json!(spec.to_string());
    if a.extrapolate {
        let x = extrapolate(&region, h, a.order, boundary(a), &cfg)?;
        v["extrapolated"] = serde_json::to_value(&x).map_err(Error::from)?;
    }
    writeln!(err, "{spec}: {} nodes, {:.2}s", sol.nodes, t0.elapsed().as_secs_f64())?;
    writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(Error::from)?)?;
    Ok(0)
}

/// Parsed `kind.param=lo:hi:n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub kind: String,
    pub param: String,
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl std::str::FromStr for Sweep {
    type Err = Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        let bad = || Error::Parse(format!("sweep {s:?} is not kind.param=lo:hi:n"));
        let (lhs, rhs) = s.split_once('=').ok_or_else(bad)?;
        let (kind, param) = lhs.split_once('.').ok_or_else(bad)?;
        let parts: Vec<&str> = rhs.split(':').collect();
        let [lo, hi, n] = parts[..] else { return Err(bad()) };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n == 0 || !(lo.is_finite() && hi.is_finite()) || (n > 1 && lo > hi) {
            return Err(bad());
        }
        Ok(Sweep { kind: kind.trim().into(), param: param.trim().into(), lo, hi, n })
    }
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        (0..self.n)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (self.n - 1) as f64)
            .collect()
    }

    /// Shape spec text for one sweep value, keeping the other parameters of
    /// `base` when it is of the same kind.
    pub fn spec_text(&self, value: f64, base: Option<&ShapeSpec>) -> String {
        let mut params: Vec<String> = base
            .filter(|b| b.name() == self.kind)
            .map(|b| {
                b.params
                    .iter()
                    .filter(|(k, _)| *k != self.param)
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect()
            })
            .unwrap_or_default();
        params.insert(0, format!("{}={value}", self.param));
        format!("{}:{}", self.kind, params.join(","))
    }
}

/// One row of the sweep CSV.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub param: f64,
    pub lambda: f64,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "M")]
    pub m: f64,
    pub ratio: f64,
    pub lower_cert_lo: Option<f64>,
    pub upper_cert_hi: Option<f64>,
    pub ratio_indicator: f64,
    pub inside: Option<bool>,
}

/// Extrapolated oracle values for one shape with its certified sandwich.
/// `inside` is `None` when no valid bound applies.
pub fn sweep_row(
    spec: &ShapeSpec,
    param: f64,
    h: Option<f64>,
    across: f64,
    order: u32,
    boundary: BoundaryTreatment,
    cfg: &SolverConfig,
) -> crate::Result<SweepRow> {
    let region = ConvexRegion::from_shape(spec)?;
    let h = h.unwrap_or_else(|| {
        let [x0, y0, x1, y1] = region.bbox;
        (x1 - x0).min(y1 - y0) / across
    });
    let x = extrapolate(&region, h, order, boundary, cfg)?;
    let rows = bounds_for(spec, DEFAULT_TERMS).unwrap_or_default();
    let (lo, hi) = polya_sandwich(&rows);
    let lower = lo.map(|r| r.value.lo());
    let upper = hi.map(|r| r.value.hi());
    let r = x.ratio.extrapolated;
    let tol = (0.01 * r).max(5.0 * x.ratio.error_indicator);
    let inside = (lower.is_some() || upper.is_some())
        .then(|| lower.is_none_or(|l| l - tol <= r) && upper.is_none_or(|u| r <= u + tol));
    Ok(SweepRow {
        param,
        lambda: x.lambda.extrapolated,
        t: x.t.extrapolated,
        m: x.m.extrapolated,
        ratio: r,
        lower_cert_lo: lower,
        upper_cert_hi: upper,
        ratio_indicator: x.ratio.error_indicator,
        inside,
    })
}

fn cmd_sweep(a: &OracleArgs, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    let sweep: Sweep = text.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
    let base = a.spec.as_deref().map(parse_spec).transpose()?;
    let specs: Vec<(f64, ShapeSpec)> = sweep
        .values()
        .into_iter()
        .map(|v| parse_spec(&sweep.spec_text(v, base.as_ref())).map(|s| (v, s)))
        .collect::<std::result::Result<_, _>>()?;
    let cfg = solver_config(a);
    let bnd = boundary(a);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs)
        .build()
        .map_err(|e| Failure::Failed(e.to_string()))?;
    let t0 = Instant::now();
    let rows: Vec<crate::Result<SweepRow>> = pool.install(|| {
        specs
            .par_iter()
            .map(|(v, s)| sweep_row(s, *v, a.h, a.across, a.order, bnd, &cfg))
            .collect()
    });
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r?).map_err(|e| Failure::Failed(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Failed(e.to_string()))?;
    out.write_all(&bytes)?;
    writeln!(err, "sweep of {} shapes in {:.2}s", specs.len(), t0.elapsed().as_secs_f64())?;
    Ok(0)
}
