//! Command-line front end. Every subcommand writes one JSON report (plus
//! optional CSV dumps) and maps its verdict onto the exit code:
//! 0 pass, 1 violations found, 2 bad input or config, 3 evaluation failure.

use crate::admiss::{admissibility_scan, default_m_grid, CaseId};
use crate::apps::{corollary_check, Corollary};
use crate::domains::{boundary_csv, sig17, DomainId, TargetDomain};
use crate::error::{Error, Result};
use crate::fncat::{AnalyticMap, DiskGrid};
use crate::janowski::{
    check_conditions, feasibility_scan, final_bound, psi_k_monotone, GridSpec, JanowskiQuad,
};
use crate::means::{arith_mean, geo_mean, harm_mean, MeanWeight, ThetaPhiPair};
use crate::report::to_json;
use crate::subord::{falsify_lemma, is_subordinate, SamplerConfig};
use crate::thresholds::{
    beta0_value, beta1_value, check_alpha_rho, combined_threshold, regional_oracle, uniform_threshold, BoundaryPoint,
    Expr, RegionGrid, Theorem, ThresholdParams, BETA0_LABELS, BETA1_LABELS, ORACLE_TOL,
};
use crate::verify::{run_suite, VerifyConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;
pub const THREADS_ENV: &str = "SUBORDKIT_THREADS";

#[derive(Parser, Debug)]
#[command(name = "subordkit", version, about = "Checks for harmonic-mean differential subordination on the unit disk")]
struct Cli {
    /// Directory for JSON reports and CSV dumps; reports go to stdout when absent
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON config file: {suite, grids, tolerances, seed, out}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// PRNG seed, overriding the config (default 0xC0FFEE)
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evaluate a weighted mean of two complex numbers
    MeansEval(MeansArgs),
    /// Test p ≺ h on a disk grid, or search for counterexamples to the mean lemma
    Subcheck(SubArgs),
    /// Scan ψ(r, s) over boundary data of an example target against Ω domains
    Admissibility(AdmArgs),
    /// Janowski-target conditions
    #[command(subcommand)]
    Janowski(JanCmd),
    /// β thresholds for the combined mean functionals
    Threshold(ThrArgs),
    /// Evaluate a corollary premise and conclusion for a normalized f
    Apply(ApplyArgs),
    /// Run the full acceptance suite and write verify-paper.json
    VerifyPaper,
    /// Dump boundary tables or scan results as CSV or JSON
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MeanKind {
    Arithmetic,
    Geometric,
    Harmonic,
}

#[derive(Args, Debug)]
struct MeansArgs {
    /// Weight t ∈ [0, 1]
    #[arg(long)]
    t: f64,
    /// Real part of x
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    /// Real part of y
    #[arg(long, allow_hyphen_values = true)]
    y: f64,
    /// Imaginary part of x
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    x_im: f64,
    /// Imaginary part of y
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    y_im: f64,
    /// Which weighted mean
    #[arg(long, value_enum)]
    mean: MeanKind,
}

#[derive(Args, Debug)]
struct SubArgs {
    /// Target domain, e.g. exp, halfplane(0), janowski(1/2,-1/2)
    #[arg(long)]
    domain: String,
    /// Expression (inline JSON or file) for p; required without --falsify
    #[arg(long)]
    p: Option<String>,
    /// Grid radii, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.9, 0.99, 0.999])]
    radii: Vec<f64>,
    /// Angular samples per radius
    #[arg(long, default_value_t = 1024)]
    n: usize,
    /// Run the randomized lemma search instead of a single check
    #[arg(long)]
    falsify: bool,
    /// Θ expression for --falsify (default 1)
    #[arg(long)]
    theta: Option<String>,
    /// Φ expression for --falsify (default 1)
    #[arg(long)]
    phi: Option<String>,
    /// Weight t ∈ [0, 1] for --falsify
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    /// Premise-holding samples to collect
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
}

#[derive(Args, Debug)]
struct AdmArgs {
    /// exp, sqrt or sigmoid
    #[arg(long)]
    case: String,
    /// Ω domains (repeatable); the case's default list when absent
    #[arg(long)]
    omega: Vec<String>,
    /// Boundary parameters per scan
    #[arg(long, default_value_t = 1024)]
    theta_n: usize,
    /// Largest finite m; m = ∞ is always added
    #[arg(long, default_value_t = 20.0)]
    m_max: f64,
    /// Also write one CSV per Ω into --out
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum JanCmd {
    /// Check the three conditions and the final bound in exact arithmetic
    Check(JanCheckArgs),
    /// Exact-rational feasibility scan over a grid of tuples
    Scan(JanScanArgs),
}

#[derive(Args, Debug)]
struct JanCheckArgs {
    /// A as a rational, e.g. 3/8
    #[arg(long = "A", allow_hyphen_values = true)]
    a: String,
    /// B as a rational
    #[arg(long = "B", allow_hyphen_values = true)]
    b: String,
    /// D as a rational
    #[arg(long = "D", allow_hyphen_values = true)]
    d: String,
    /// E as a rational, e.g. 123/128
    #[arg(long = "E", allow_hyphen_values = true)]
    e: String,
    /// Check the second condition for k = 1..=k_max
    #[arg(long, default_value_t = 100)]
    k_max: u32,
}

#[derive(Args, Debug)]
struct JanScanArgs {
    /// Grid JSON (inline or file): {a,b,d,e: {start, stop, step}}
    #[arg(long)]
    grid: Option<String>,
    /// Check the second condition for k = 1..=k_max
    #[arg(long, default_value_t = 100)]
    k_max: u32,
}

#[derive(Args, Debug)]
struct ThrArgs {
    /// α ∈ [0, 1)
    #[arg(long)]
    alpha: f64,
    /// ρ ∈ [0, 1], with ρ ≥ α(1 + 2α) when α ≤ 1/2
    #[arg(long)]
    rho: f64,
    /// γ ∈ [0, 1]; γ = 1 reduces β to α
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// δ ∈ [1, 2]
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// μ ∈ [0, 1]
    #[arg(long, default_value_t = 0.0)]
    mu: f64,
    /// 29 (β₀) or 210 (β₁)
    #[arg(long, default_value = "210")]
    theorem: String,
    /// Contact data x > 0 (with --my) for a point-specific β
    #[arg(long)]
    x: Option<f64>,
    /// Contact data my, at most -((1-α)² + x²)/(2(1-α))
    #[arg(long, allow_hyphen_values = true)]
    my: Option<f64>,
    /// Run the regional oracle for the theorem's expression
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct ApplyArgs {
    /// starlike36, univalent38 or fz39
    #[arg(long)]
    corollary: String,
    /// Expression (inline JSON or file) for f
    #[arg(long)]
    f: String,
    /// {"gamma","alpha","mu","delta","rho"} as inline JSON or file
    #[arg(long)]
    params: String,
    /// Grid radii, comma separated
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 0.9, 0.99, 0.999])]
    radii: Vec<f64>,
    /// Angular samples per radius
    #[arg(long, default_value_t = 1024)]
    n: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum What {
    Boundary,
    Admissibility,
    Feasibility,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ExportArgs {
    /// What to export
    #[arg(long, value_enum)]
    what: What,
    /// Output format
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Domain for boundary exports
    #[arg(long)]
    domain: Option<String>,
    /// Boundary rows
    #[arg(long, default_value_t = 4096)]
    resolution: usize,
    /// Case for admissibility exports
    #[arg(long)]
    case: Option<String>,
    /// Ω domains for admissibility exports (repeatable)
    #[arg(long)]
    omega: Vec<String>,
    /// Boundary parameters per admissibility scan
    #[arg(long, default_value_t = 1024)]
    theta_n: usize,
    /// Largest finite m for admissibility exports
    #[arg(long, default_value_t = 20.0)]
    m_max: f64,
    /// Grid JSON for feasibility exports
    #[arg(long)]
    grid: Option<String>,
    /// Largest k for feasibility exports
    #[arg(long, default_value_t = 100)]
    k_max: u32,
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Expression(_) | Error::OutOfRange(_) => EXIT_CONFIG,
        _ => EXIT_RUNTIME,
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV}={v:?} is not a positive integer")))?;
        // a pool may already exist when run() is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    match configure_threads().and_then(|_| dispatch(cli)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

struct Ctx {
    out: Option<PathBuf>,
    config: VerifyConfig,
}

impl Ctx {
    fn emit(&self, name: &str, body: &str) -> Result<()> {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                let path = dir.join(name);
                fs::write(&path, body)?;
                println!("wrote {}", path.display());
            }
            None => {
                let mut out = std::io::stdout().lock();
                match out.write_all(body.as_bytes()).and_then(|_| out.flush()) {
                    Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
                    _ => {}
                }
            }
        }
        Ok(())
    }

    fn emit_json(&self, name: &str, v: &Value) -> Result<()> {
        self.emit(name, &to_json(v)?)
    }

    /// CSV dumps go beside the JSON report, or to stdout.
    fn emit_file(&self, name: &str, body: &str) -> Result<()> {
        self.emit(name, body)
    }
}

fn load_config(path: Option<&Path>) -> Result<VerifyConfig> {
    match path {
        None => Ok(VerifyConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?;
            VerifyConfig::from_json(&text)
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    let mut config = load_config(cli.config.as_deref())?;
    if let Some(s) = cli.seed {
        config.seed = s;
    }
    let out = cli.out.or_else(|| config.out.clone().map(PathBuf::from));
    let ctx = Ctx { out, config };
    match cli.cmd {
        Cmd::MeansEval(a) => means_eval(&ctx, a),
        Cmd::Subcheck(a) => subcheck(&ctx, a),
        Cmd::Admissibility(a) => admissibility(&ctx, a),
        Cmd::Janowski(JanCmd::Check(a)) => janowski_check(&ctx, a),
        Cmd::Janowski(JanCmd::Scan(a)) => janowski_scan(&ctx, a),
        Cmd::Threshold(a) => threshold(&ctx, a),
        Cmd::Apply(a) => apply(&ctx, a),
        Cmd::VerifyPaper => verify_paper(&ctx),
        Cmd::Export(a) => export(&ctx, a),
    }
}

/// Inline JSON when the argument starts with `{` or `[`, a file path otherwise.
fn read_json_arg(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Error::Config(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Expression(e.to_string()))
}

fn read_expr(arg: &str) -> Result<AnalyticMap> {
    AnalyticMap::from_json(&read_json_arg(arg)?)
}

/// JSON number, or "inf"/"-inf"/"NaN" for non-finite values (m = ∞ rows).
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(sig17(x))
    }
}

fn c2(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn means_eval(ctx: &Ctx, a: MeansArgs) -> Result<i32> {
    let t = MeanWeight::new(a.t)?;
    let (x, y) = (Complex64::new(a.x, a.x_im), Complex64::new(a.y, a.y_im));
    let (value, kind) = match a.mean {
        MeanKind::Arithmetic => (arith_mean(t, x, y), "regular"),
        MeanKind::Geometric => (geo_mean(t, x, y)?, "regular"),
        MeanKind::Harmonic => {
            let v = harm_mean(t, x, y)?;
            (v.value(), if v.is_regular() { "regular" } else { "near-singular" })
        }
    };
    let name = format!("{:?}", a.mean).to_lowercase();
    ctx.emit_json("means-eval.json", &json!({"mean": name, "t": a.t, "x": c2(x), "y": c2(y), "value": c2(value), "kind": kind}))?;
    Ok(EXIT_PASS)
}

fn subcheck(ctx: &Ctx, a: SubArgs) -> Result<i32> {
    let dom = TargetDomain::parse(&a.domain)?;
    if a.falsify {
        let theta = a.theta.as_deref().map(read_expr).transpose()?.unwrap_or(AnalyticMap::constant(1.0));
        let phi = a.phi.as_deref().map(read_expr).transpose()?.unwrap_or(AnalyticMap::constant(1.0));
        let pair = ThetaPhiPair::new(theta, phi)?;
        let cfg = SamplerConfig { seed: ctx.config.seed, radii: a.radii.clone(), n: a.n, ..SamplerConfig::default() };
        let rep = falsify_lemma(&pair, a.t, &dom, &cfg, a.budget)?;
        let bad = !rep.violations.is_empty();
        ctx.emit_json(
            "subcheck.json",
            &json!({
                "mode": "falsify",
                "domain": dom.id(),
                "t": a.t,
                "seed": ctx.config.seed,
                "premise_rate": rep.premise_rate,
                "violations": rep.violations,
                "grids": {"radii": rep.radii, "n": rep.n},
                "report": rep,
            }),
        )?;
        return Ok(if bad { EXIT_VIOLATION } else { EXIT_PASS });
    }
    let p = read_expr(a.p.as_deref().ok_or_else(|| Error::Config("subcheck needs --p or --falsify".into()))?)?;
    let v = is_subordinate(&p, &dom, &a.radii, a.n)?;
    ctx.emit_json(
        "subcheck.json",
        &json!({
            "mode": "check",
            "domain": dom.id(),
            "p": p.to_json(),
            "violations": v.witness.iter().collect::<Vec<_>>(),
            "grids": {"radii": a.radii, "n": a.n},
            "verdict": v,
        }),
    )?;
    Ok(if v.subordinate { EXIT_PASS } else { EXIT_VIOLATION })
}

fn parse_omegas(case: CaseId, list: &[String]) -> Result<Vec<TargetDomain>> {
    if list.is_empty() {
        case.default_omegas().into_iter().map(TargetDomain::new).collect()
    } else {
        list.iter().map(|s| TargetDomain::parse(s)).collect()
    }
}

fn adm_reports(case: &str, omega: &[String], theta_n: usize, m_max: f64) -> Result<Vec<crate::admiss::ScanReport>> {
    let case: CaseId = case.parse()?;
    let omegas = parse_omegas(case, omega)?;
    admissibility_scan(case, &omegas, &case.theta_grid(theta_n), &default_m_grid(m_max))
}

fn admissibility(ctx: &Ctx, a: AdmArgs) -> Result<i32> {
    let reps = adm_reports(&a.case, &a.omega, a.theta_n, a.m_max)?;
    if a.csv {
        for r in &reps {
            ctx.emit_file(&format!("admissibility-{}-{}.csv", r.case, r.omega), &r.csv())?;
        }
    }
    let summary: Vec<Value> = reps
        .iter()
        .map(|r| json!({"omega": r.omega, "violations": r.violations.len(), "boundary_contacts": r.boundary_contacts, "excluded": r.excluded.len(), "min_re": r.min_re}))
        .collect();
    let bad = reps.iter().any(|r| !r.violations.is_empty());
    ctx.emit_json(
        "admissibility.json",
        &json!({"case": a.case, "theta_n": a.theta_n, "m_max": a.m_max, "summary": summary, "reports": reps}),
    )?;
    Ok(if bad { EXIT_VIOLATION } else { EXIT_PASS })
}

fn k_range(k_max: u32) -> Vec<BigRational> {
    (1..=k_max.max(1)).map(|k| BigRational::from_integer(BigInt::from(k))).collect()
}

fn janowski_check(ctx: &Ctx, a: JanCheckArgs) -> Result<i32> {
    let q = JanowskiQuad::parse(&a.a, &a.b, &a.d, &a.e)?;
    let ks = k_range(a.k_max);
    let rep = check_conditions(&q, &ks)?;
    let fb = final_bound(&q);
    let fb_ok = fb.as_ref().map(|v| *v >= BigRational::one()).unwrap_or(false);
    let worst = rep.cond2.iter().min_by(|x, y| x.margin.cmp(&y.margin));
    let mono = psi_k_monotone(&q, &ks, BigRational::zero()).ok();
    let all = rep.all() && fb_ok;
    ctx.emit_json(
        "janowski-check.json",
        &json!({
            "tuple": {"A": q.a.to_string(), "B": q.b.to_string(), "D": q.d.to_string(), "E": q.e.to_string()},
            "cond3": {"value": rep.cond3_value.to_string(), "holds": rep.cond3},
            "cond4": {"margin": rep.cond4_margin.to_string(), "holds": rep.cond4},
            "cond2": {
                "k_max": a.k_max,
                "holds": rep.cond2_all(),
                "worst_k": worst.map(|w| w.k.to_string()),
                "worst_margin": worst.map(|w| w.margin.to_string()),
                "readings_agree": rep.cond2.iter().all(|c| c.readings_agree),
                "leading_k2": rep.cond2_leading_k2.to_string(),
            },
            "final_bound": match &fb {
                Ok(v) => json!({"exact": v.to_string(), "float": v.to_f64(), "at_least_one": fb_ok}),
                Err(e) => json!({"error": e.to_string()}),
            },
            "psi_k_nondecreasing": mono.map(|m| m.nondecreasing),
            "all_hold": all,
        }),
    )?;
    Ok(if all { EXIT_PASS } else { EXIT_VIOLATION })
}

fn grid_spec(arg: Option<&str>) -> Result<GridSpec> {
    match arg {
        None => Ok(GridSpec::default()),
        Some(s) => serde_json::from_value(read_json_arg(s)?).map_err(|e| Error::Config(e.to_string())),
    }
}

fn janowski_scan(ctx: &Ctx, a: JanScanArgs) -> Result<i32> {
    let spec = grid_spec(a.grid.as_deref())?;
    let res = feasibility_scan(&spec, &k_range(a.k_max))?;
    ctx.emit_json("janowski-scan.json", &json!({"grid": spec, "k_max": a.k_max, "result": res}))?;
    Ok(EXIT_PASS)
}

fn threshold(ctx: &Ctx, a: ThrArgs) -> Result<i32> {
    let thm: Theorem = a.theorem.parse()?;
    let params = ThresholdParams::new(a.gamma, a.alpha, a.mu, a.delta, a.rho)?;
    check_alpha_rho(a.alpha, a.rho)?;
    let (labels, value): (&[&str], fn(f64, f64, usize) -> Result<f64>) = match thm {
        Theorem::Thm29 => (&BETA0_LABELS, beta0_value),
        Theorem::Thm210 => (&BETA1_LABELS, beta1_value),
    };
    let branches: Vec<Value> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| match value(a.alpha, a.rho, i + 1) {
            Ok(v) => json!({"branch": i + 1, "label": l, "value": v}),
            Err(e) => json!({"branch": i + 1, "label": l, "error": e.to_string()}),
        })
        .collect();
    let uniform = uniform_threshold(&params, thm).map_err(|e| e.to_string());
    let point = match (a.x, a.my) {
        (Some(x), Some(my)) => {
            let pt = BoundaryPoint::new(a.alpha, x, my)?;
            Some(combined_threshold(&params, thm, &pt)?)
        }
        (None, None) => None,
        _ => return Err(Error::Config("--x and --my go together".into())),
    };
    let mut code = EXIT_PASS;
    let oracle = if a.oracle {
        let which = if thm == Theorem::Thm29 { Expr::E0 } else { Expr::E1 };
        let rep = regional_oracle(a.alpha, a.rho, which, &RegionGrid::default())?;
        if !rep.holds(ORACLE_TOL) {
            code = EXIT_VIOLATION;
        }
        Some(rep)
    } else {
        None
    };
    ctx.emit_json(
        "threshold.json",
        &json!({
            "theorem": thm.to_string(),
            "params": params,
            "branches": branches,
            "uniform_beta": match uniform { Ok(v) => json!(v), Err(e) => json!({"error": e}) },
            "at_point": point,
            "oracle": oracle,
        }),
    )?;
    Ok(code)
}

fn apply(ctx: &Ctx, a: ApplyArgs) -> Result<i32> {
    let which: Corollary = a.corollary.parse()?;
    let f = read_expr(&a.f)?;
    let p: ThresholdParams = serde_json::from_value(read_json_arg(&a.params)?).map_err(|e| Error::Config(e.to_string()))?;
    let params = ThresholdParams::new(p.gamma, p.alpha, p.mu, p.delta, p.rho)?;
    let grid = DiskGrid::new(a.radii, a.n, false)?;
    let rep = corollary_check(which, &f, &params, &grid)?;
    let bad = rep.implication_violations > 0;
    ctx.emit_json("apply.json", &json!({"f": f.to_json(), "report": rep}))?;
    Ok(if bad { EXIT_VIOLATION } else { EXIT_PASS })
}

fn verify_paper(ctx: &Ctx) -> Result<i32> {
    let rep = run_suite(&ctx.config)?;
    ctx.emit("verify-paper.json", &to_json(&rep)?)?;
    for (k, ok) in rep.criteria() {
        let name = if k == 0 { "supplementary".to_string() } else { format!("criterion {k}") };
        eprintln!("{name}: {}", if ok { "pass" } else { "FAIL" });
    }
    Ok(if rep.all_pass() { EXIT_PASS } else { EXIT_VIOLATION })
}

fn export(ctx: &Ctx, a: ExportArgs) -> Result<i32> {
    match a.what {
        What::Boundary => {
            let id: DomainId = a.domain.as_deref().ok_or_else(|| Error::Config("boundary export needs --domain".into()))?.parse()?;
            let dom = TargetDomain::with_resolution(id, a.resolution)?;
            let table = dom.boundary_table(a.resolution)?;
            match a.format {
                Format::Csv => ctx.emit_file(&format!("boundary-{id}.csv"), &boundary_csv(&table))?,
                Format::Json => {
                    let rows: Vec<Value> = table.iter().map(|(t, w)| json!([t, w.re, w.im])).collect();
                    ctx.emit_json(&format!("boundary-{id}.json"), &json!({"domain": id, "columns": ["theta", "re", "im"], "rows": rows}))?
                }
            }
        }
        What::Admissibility => {
            let case = a.case.as_deref().ok_or_else(|| Error::Config("admissibility export needs --case".into()))?;
            let reps = adm_reports(case, &a.omega, a.theta_n, a.m_max)?;
            for r in &reps {
                match a.format {
                    Format::Csv => ctx.emit_file(&format!("admissibility-{}-{}.csv", r.case, r.omega), &r.csv())?,
                    Format::Json => {
                        let rows: Vec<Value> = r.rows.iter().map(|x| json!([x.theta, num(x.m), x.re, x.im, x.verdict.as_str()])).collect();
                        ctx.emit_json(
                            &format!("admissibility-{}-{}.json", r.case, r.omega),
                            &json!({"case": r.case, "omega": r.omega, "columns": ["theta", "m", "re", "im", "verdict"], "rows": rows}),
                        )?
                    }
                }
            }
        }
        What::Feasibility => {
            let spec = grid_spec(a.grid.as_deref())?;
            let res = feasibility_scan(&spec, &k_range(a.k_max))?;
            match a.format {
                Format::Json => ctx.emit_json("feasibility.json", &json!({"grid": spec, "k_max": a.k_max, "result": res}))?,
                Format::Csv => {
                    let mut s = String::from("A,B,D,E,cond3_value,cond4_margin,final_bound\n");
                    for t in &res.feasible {
                        s.push_str(&format!("{},{},{},{},{},{},{}\n", t.a, t.b, t.d, t.e, t.cond3_value, t.cond4_margin, t.final_bound));
                    }
                    ctx.emit_file("feasibility.csv", &s)?
                }
            }
        }
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn bad_usage_is_config_exit() {
        assert_eq!(run(["subordkit", "no-such-command"]), EXIT_CONFIG);
        assert_eq!(run(["subordkit", "means-eval", "--t", "2", "--x", "1", "--y", "3", "--mean", "harmonic"]), EXIT_CONFIG);
    }

    #[test]
    fn harmonic_mean_example() {
        assert_eq!(run(["subordkit", "means-eval", "--t", "0.5", "--x", "1", "--y", "3", "--mean", "harmonic"]), EXIT_PASS);
    }
}
