//! Batch front end: load fixtures, run one command over its cases, write a
//! JSON or CSV report.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails,
//! 2 on input or convergence errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::circle::{CirclePoint, DiskPoint};
use crate::error::{Error, Result};
use crate::fixtures::{Case, Command, FixtureSet};
use crate::kernel::{p_lambda_closed_form, p_phi_at, radial_sweep, RadialScheme};
use crate::norm::{
    norm_report, sharpness_scan, verify_bound, verify_lemma1, verify_lemma2, ScanConfig, SearchConfig, VerifyContext,
};
use crate::poly::DiskAlgebraPoly;
use crate::selfmap::{schwarz_factorize, DiskSelfMap};
use crate::tolerance::Tolerances;
use crate::{Stopwatch, DEFAULT_SEED};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Default degree cap of the sharpness scan's inner searches.
pub const SCAN_DEGREE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum FixtureSource {
    Standard,
    Path(PathBuf),
}

impl std::str::FromStr for FixtureSource {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(if s == "standard" { Self::Standard } else { Self::Path(PathBuf::from(s)) })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub fixtures: FixtureSource,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub tol: Vec<(String, f64)>,
    pub degree_cap: Option<usize>,
    pub restarts: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command, fixtures: FixtureSource) -> Self {
        Self {
            command,
            fixtures,
            seed: DEFAULT_SEED,
            out: None,
            format: Format::Json,
            tol: Vec::new(),
            degree_cap: None,
            restarts: None,
        }
    }

    fn context(&self) -> Result<VerifyContext> {
        let mut tol = Tolerances::default();
        for (name, value) in &self.tol {
            tol.set(name, *value)?;
        }
        let base = SearchConfig::default();
        let search = SearchConfig::new(
            self.degree_cap.unwrap_or(base.degree_cap),
            self.restarts.unwrap_or(base.restarts).max(1),
            self.seed,
        );
        Ok(VerifyContext {
            search,
            scheme: RadialScheme { convergence_tol: tol.radial, ..RadialScheme::default() },
            tol,
        })
    }
}

/// Parses `name=value`.
pub fn parse_tol(s: &str) -> Result<(String, f64)> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| Error::InvalidInput(format!("tolerance override {s:?} is not name=value")))?;
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::InvalidInput(format!("tolerance override {s:?}: {value:?} is not a number")))?;
    Tolerances::default().set(name.trim(), value)?;
    Ok((name.trim().to_string(), value))
}

#[derive(Debug, Parser)]
#[command(name = "cauchy-compose", version, about = "Checks composition-operator norm bounds on Cauchy transforms")]
pub struct Args {
    /// verify-bound, verify-lemma1, verify-lemma2, factorize, kernel-compare,
    /// norm-estimate or sharpness-scan
    #[arg(value_parser = |s: &str| s.parse::<Command>().map_err(|e| e.to_string()))]
    pub command: Command,
    /// Fixture file, or `standard` for the built-in set
    #[arg(long, default_value = "standard")]
    pub fixtures: FixtureSource,
    /// Seed for every randomized search
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Output file; stdout when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Tolerance override `name=value`; repeatable
    #[arg(long = "tol", value_parser = |s: &str| parse_tol(s).map_err(|e| e.to_string()))]
    pub tol: Vec<(String, f64)>,
    /// Degree cap of the dual searches
    #[arg(long)]
    pub degree_cap: Option<usize>,
    /// Random restarts of the dual searches
    #[arg(long)]
    pub restarts: Option<usize>,
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        Self {
            command: a.command,
            fixtures: a.fixtures,
            seed: a.seed,
            out: a.out,
            format: a.format,
            tol: a.tol,
            degree_cap: a.degree_cap,
            restarts: a.restarts,
        }
    }
}

/// A finished run: the rendered report and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub text: String,
    pub pass: bool,
}

struct Table {
    header: &'static [&'static str],
    rows: Vec<Vec<String>>,
}

fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn rel_diff(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm().max(1.0)
}

fn run_case(case: &Case, fx: &FixtureSet, ctx: &VerifyContext, scan: &ScanConfig) -> Result<Value> {
    let measure = |i: usize| &fx.measures[i];
    let self_map = |i: usize| &fx.self_maps[i];
    let report = match case {
        Case::VerifyBound { measure: m, self_map: s } => {
            serde_json::to_value(verify_bound(measure(*m), self_map(*s), ctx)?)
        }
        Case::VerifyLemma1 { measure: m, self_map: s } => {
            serde_json::to_value(verify_lemma1(measure(*m), self_map(*s), ctx)?)
        }
        Case::VerifyLemma2 { measure: m, a } => {
            serde_json::to_value(verify_lemma2(measure(*m), DiskPoint::new(*a)?, ctx)?)
        }
        Case::NormEstimate { measure: m } => serde_json::to_value(norm_report(measure(*m), ctx)?),
        Case::Factorize { self_map: s } => return factorize_report(self_map(*s), ctx),
        Case::KernelCompare { a, h, zeta_angle, r } => return kernel_report(*a, h, *zeta_angle, *r, ctx),
        Case::SharpnessScan { a_values, degree_cap } => {
            let cfg = ScanConfig { degree_cap: degree_cap.unwrap_or(scan.degree_cap), ..*scan };
            return scan_report(a_values, &cfg, ctx);
        }
    };
    Ok(report.expect("reports serialize"))
}

fn factorize_report(phi: &DiskSelfMap, ctx: &VerifyContext) -> Result<Value> {
    let clock = Stopwatch::start();
    let f = schwarz_factorize(phi)?;
    let check = f.check(phi);
    let pass = check.reconstruction_error <= ctx.tol.identity && check.psi_at_origin <= ctx.tol.origin;
    Ok(json!({
        "claim": "factorization: phi = lambda_a o psi with psi(0) = 0",
        "inputs": { "phi": phi },
        "a": cx(f.a.value()),
        "psi": f.psi,
        "check": check,
        "pass": pass,
        "runtime_ms": clock.elapsed_ms(),
    }))
}

fn kernel_report(a: Complex64, h: &[Complex64], zeta_angle: f64, r: f64, ctx: &VerifyContext) -> Result<Value> {
    let clock = Stopwatch::start();
    let a = DiskPoint::new(a)?;
    let h = DiskAlgebraPoly::new(h.to_vec())?;
    let zeta = CirclePoint::from_angle(zeta_angle);
    let phi = DiskSelfMap::mobius(a);
    let closed = p_lambda_closed_form(a, &h, zeta, r)?;
    let quad = p_phi_at(&phi, &h, zeta, r)?;
    let diff = rel_diff(quad, closed);
    let sweep = radial_sweep(&phi, &h, zeta, &ctx.scheme)?;
    Ok(json!({
        "claim": "kernel: quadrature equals the residue closed form",
        "inputs": { "a": cx(a.value()), "h": h.coeffs(), "zeta_angle": zeta_angle, "r": r },
        "closed_form": cx(closed),
        "quadrature": cx(quad),
        "relative_difference": diff,
        "tolerance": ctx.tol.quadrature,
        "sweep": sweep.iter().map(|s| json!({ "zeta_angle": s.zeta_angle, "r": s.r, "value": cx(s.value) })).collect::<Vec<_>>(),
        "pass": diff <= ctx.tol.quadrature,
        "runtime_ms": clock.elapsed_ms(),
    }))
}

fn scan_report(a_values: &[f64], cfg: &ScanConfig, ctx: &VerifyContext) -> Result<Value> {
    let clock = Stopwatch::start();
    let rows = sharpness_scan(a_values, cfg)?;
    let pass = rows.iter().all(|r| r.ratio <= r.bound + ctx.tol.bound);
    Ok(json!({
        "claim": "scan: achieved ratios stay below (1+2|a|)/(1-|a|)",
        "inputs": { "a_values": a_values, "config": cfg },
        "rows": rows,
        "pass": pass,
        "runtime_ms": clock.elapsed_ms(),
    }))
}

fn num(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(command: Command, reports: &[Value]) -> Table {
    let mut rows = Vec::new();
    let header: &'static [&'static str] = match command {
        Command::Factorize => {
            for (i, r) in reports.iter().enumerate() {
                rows.push(vec![
                    i.to_string(),
                    num(&r["a"][0]),
                    num(&r["a"][1]),
                    num(&r["check"]["reconstruction_error"]),
                    num(&r["check"]["psi_at_origin"]),
                    num(&r["check"]["schwarz_excess"]),
                    num(&r["pass"]),
                ]);
            }
            &["case", "a_re", "a_im", "reconstruction_error", "psi_at_origin", "schwarz_excess", "pass"]
        }
        Command::KernelCompare => {
            for (i, r) in reports.iter().enumerate() {
                for s in r["sweep"].as_array().into_iter().flatten() {
                    let (re, im) =
                        (s["value"][0].as_f64().unwrap_or(f64::NAN), s["value"][1].as_f64().unwrap_or(f64::NAN));
                    rows.push(vec![
                        i.to_string(),
                        num(&s["zeta_angle"]),
                        num(&s["r"]),
                        num(&s["value"][0]),
                        num(&s["value"][1]),
                        Complex64::new(re, im).norm().to_string(),
                    ]);
                }
            }
            &["case", "zeta_angle", "r", "re", "im", "abs"]
        }
        Command::SharpnessScan => {
            for (i, r) in reports.iter().enumerate() {
                for row in r["rows"].as_array().into_iter().flatten() {
                    let ratio = row["ratio"].as_f64().unwrap_or(f64::NAN);
                    let bound = row["bound"].as_f64().unwrap_or(f64::NAN);
                    rows.push(vec![
                        i.to_string(),
                        num(&row["a_mod"]),
                        num(&row["bound"]),
                        num(&row["ratio"]),
                        (ratio / bound).to_string(),
                        row["witness_mu"].as_array().map_or(0, Vec::len).to_string(),
                    ]);
                }
            }
            &["case", "a_mod", "bound", "ratio", "ratio_over_bound", "atoms"]
        }
        _ => {
            for (i, r) in reports.iter().enumerate() {
                rows.push(vec![
                    i.to_string(),
                    num(&r["claim"]),
                    num(&r["lower"]),
                    num(&r["upper"]),
                    num(&r["bound"]),
                    num(&r["pass"]),
                    num(&r["runtime_ms"]),
                ]);
            }
            &["case", "claim", "lower", "upper", "bound", "pass", "runtime_ms"]
        }
    };
    Table { header, rows }
}

fn render_csv(t: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
    w.write_record(t.header).map_err(io)?;
    for row in &t.rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Runs the command and renders the report without writing it anywhere.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput> {
    let fx = match &cfg.fixtures {
        FixtureSource::Standard => FixtureSet::standard(),
        FixtureSource::Path(p) => FixtureSet::load(p)?,
    };
    let ctx = cfg.context()?;
    let base = ScanConfig::new(cfg.degree_cap.unwrap_or(SCAN_DEGREE_CAP), cfg.seed);
    let scan = ScanConfig { restarts: cfg.restarts.unwrap_or(base.restarts).max(1), ..base };
    let mut reports = Vec::new();
    for case in fx.cases_for(cfg.command) {
        reports.push(run_case(&case, &fx, &ctx, &scan)?);
    }
    let pass = reports.iter().all(|r| r["pass"] == Value::Bool(true));
    let text = match cfg.format {
        Format::Json => {
            let doc = json!({
                "command": cfg.command.name(),
                "seed": cfg.seed,
                "search": ctx.search,
                "tolerances": ctx.tol,
                "reports": reports,
                "pass": pass,
            });
            serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n"
        }
        Format::Csv => render_csv(&table(cfg.command, &reports))?,
    };
    Ok(RunOutput { text, pass })
}

/// Executes, writes the report to the configured destination and returns
/// the exit code. Errors go to stderr.
pub fn run(cfg: &RunConfig) -> i32 {
    let out = match execute(cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_ERROR;
    }
    if out.pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Entry point for the binary.
pub fn main_with_args(args: Args) -> i32 {
    run(&args.into())
}
