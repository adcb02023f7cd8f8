//! Command-line front end: batch verification campaigns and plot-ready data.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad configuration or input.

mod config;
mod report;
mod suites;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use config::CampaignConfig;
pub use report::{CheckRecord, Summary, VerificationReport};
pub use suites::{duality_error, maximum_principle_violations, monotone_a1_constant, run_suite, Suite, SuiteParams};

use crate::error::FracError;
use crate::extension::{neumann_trace, poisson};
use crate::fracops::{dirichlet_solve, OperatorKind};
use crate::grid::{gaussian, one_sided_exp, read_grid_function, write_grid_function, zero, GridFunction};
use crate::onesided::{
    check_a1_plus, check_ap, check_ap_plus, check_apq, check_apq_plus, default_fftc_eps, default_range_eps,
    fftc_verify, integrability_diagnostic, range_diagnostic, Lattice, WeightSample, MARGIN,
};
use crate::special::Alpha;
use crate::spectral::apply_symbol;

#[derive(Debug, Parser)]
#[command(name = "fracalc", version, about = "One-sided fractional calculus: operators, extension problem, inversion and weights")]
struct Cli {
    /// TOML file mirroring the flags; flags given on the command line win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Fractional order(s), comma separated, each in (0,1).
    #[arg(long, global = true, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    /// Truncation radii, comma separated, strictly decreasing.
    #[arg(long, global = true, value_delimiter = ',')]
    eps: Option<Vec<f64>>,
    /// Number of nodes for built-in test functions.
    #[arg(long, global = true)]
    grid_n: Option<usize>,
    /// Grid step for built-in test functions and verification suites.
    #[arg(long, global = true)]
    grid_h: Option<f64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also evaluate the operator spectrally and compare.
    #[arg(long, global = true)]
    oracle: bool,
    #[arg(long, global = true)]
    suite: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply an operator to a grid function.
    Apply {
        #[arg(long)]
        op: String,
        /// CSV file, or @gaussian, @exp, @zero for a built-in test function.
        input: String,
    },
    /// Run a verification suite and print its JSON report.
    Verify,
    /// Compute the extension field and its Neumann trace.
    Extend {
        /// Heights t, comma separated.
        #[arg(long = "t", value_delimiter = ',', required = true)]
        ts: Vec<f64>,
        input: String,
    },
    /// Solve the Dirichlet problem on [a, b) with exterior data on [b, ∞).
    Dirichlet {
        /// Right-hand side on [a, b).
        #[arg(long)]
        f: String,
        /// Exterior data starting at b.
        #[arg(long)]
        g: String,
    },
    /// Test a sampled weight for the one-sided weight conditions.
    Weights {
        #[arg(long, value_enum)]
        class: WeightClass,
        /// Exponent of the A_s conditions (defaults to the weight's p).
        #[arg(long)]
        s: Option<f64>,
        /// Interval [a, b] of the integrability diagnostic.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        interval: Option<Vec<f64>>,
        input: PathBuf,
    },
    /// Inversion check (D_right)_ε^α W_α f → f, or the range diagnostic.
    Invert {
        /// Weight CSV for weighted norms (required with --range).
        #[arg(long)]
        weight: Option<PathBuf>,
        /// Treat the input as u and test whether it lies in the range of W_α.
        #[arg(long)]
        range: bool,
        input: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightClass {
    ApPlus,
    Ap,
    ApqPlus,
    Apq,
    A1Plus,
    Integrability,
}

enum Failure {
    /// Bad flags, configuration or input: exit 2.
    Config(String),
    /// A computation failed or a check did not pass: exit 1.
    Check(String),
}

impl From<FracError> for Failure {
    fn from(e: FracError) -> Self {
        match e {
            FracError::Io(_) | FracError::Json(_) | FracError::Parse(_) => Failure::Config(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(Failure::Config(msg)) => {
            eprintln!("fracalc: error: {msg}");
            2
        }
        Err(Failure::Check(msg)) => {
            eprintln!("fracalc: {msg}");
            1
        }
    }
}

fn init_threads() -> Outcome {
    let Ok(v) = std::env::var("FRACALC_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::Config(format!("FRACALC_THREADS must be a positive integer, got '{v}'")))?;
    // a second initialisation within one process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn execute(cli: Cli) -> Outcome {
    init_threads()?;
    let file = match &cli.config {
        Some(p) => CampaignConfig::load(p).map_err(Failure::Config)?,
        None => CampaignConfig::default(),
    };
    let cfg = CampaignConfig {
        alpha: cli.alpha.clone().or(file.alpha),
        eps: cli.eps.clone().or(file.eps),
        grid_n: cli.grid_n.or(file.grid_n),
        grid_h: cli.grid_h.or(file.grid_h),
        tol: cli.tol.or(file.tol),
        out: cli.out.clone().or(file.out),
        oracle: Some(cli.oracle || file.oracle.unwrap_or(false)),
        suite: cli.suite.clone().or(file.suite),
    };
    cfg.validate().map_err(Failure::Config)?;
    match cli.command {
        Command::Apply { op, input } => cmd_apply(&cfg, &op, &input),
        Command::Verify => cmd_verify(&cfg),
        Command::Extend { ts, input } => cmd_extend(&cfg, &ts, &input),
        Command::Dirichlet { f, g } => cmd_dirichlet(&cfg, &f, &g),
        Command::Weights { class, s, interval, input } => cmd_weights(&cfg, class, s, interval, &input),
        Command::Invert { weight, range, input } => cmd_invert(&cfg, weight.as_deref(), range, &input),
    }
}

fn single_alpha(cfg: &CampaignConfig) -> std::result::Result<Alpha, Failure> {
    match cfg.alpha.as_deref() {
        Some([a]) => Alpha::new(*a).map_err(|e| Failure::Config(e.to_string())),
        Some(_) => Err(Failure::Config("this command takes a single --alpha".into())),
        None => Err(Failure::Config("--alpha is required".into())),
    }
}

/// Reads a CSV grid function, or builds a test function for `@name`.
fn load_input(cfg: &CampaignConfig, input: &str) -> std::result::Result<GridFunction, Failure> {
    let Some(name) = input.strip_prefix('@') else {
        return read_grid_function(Path::new(input)).map_err(|e| Failure::Config(format!("{input}: {e}")));
    };
    let h = cfg.grid_h.unwrap_or(SuiteParams::DEFAULT_H);
    let span = |default: f64| cfg.grid_n.map_or(default, |n| (n.max(2) - 1) as f64 * h);
    let f = match name {
        "gaussian" => gaussian(0.0, 1.0, span(24.0) / 2.0, h),
        "exp" => one_sided_exp(1.0, span(20.0), h),
        "zero" => zero(-span(10.0) / 2.0, span(10.0) / 2.0, h),
        _ => return Err(Failure::Config(format!("unknown test function '@{name}' (expected @gaussian, @exp or @zero)"))),
    };
    f.map_err(|e| Failure::Config(e.to_string()))
}

/// `dir/name.csv` → `dir/name.<suffix>.csv`; built-in inputs go to the
/// working directory.
fn derived_path(input: &str, suffix: &str) -> PathBuf {
    let p = Path::new(input.trim_start_matches('@'));
    let stem = p.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    p.with_file_name(format!("{stem}.{suffix}.csv"))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map_or_else(|| "out".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn write_json(path: &Path, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(FracError::from)? + "\n";
    fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

/// Prints the JSON to stdout, and also writes it to `--out` when given.
fn emit_json(cfg: &CampaignConfig, value: &impl Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(value).map_err(FracError::from)?;
    println!("{text}");
    match &cfg.out {
        Some(p) => write_json(p, value),
        None => Ok(()),
    }
}

fn interior_max_diff(a: &[f64], b: &[f64], f: &GridFunction) -> f64 {
    f.interior(MARGIN).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

#[derive(Serialize)]
struct OracleSummary {
    path: PathBuf,
    max_abs_diff: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tolerance: Option<f64>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ApplyReport {
    schema: u32,
    operator: &'static str,
    alpha: f64,
    input: String,
    output: PathBuf,
    n: usize,
    h: f64,
    /// max interior difference between the result and the result on the
    /// grid of step 2h, at the common nodes.
    error_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSummary>,
}

fn cmd_apply(cfg: &CampaignConfig, op: &str, input: &str) -> Outcome {
    let kind: OperatorKind = op.parse().map_err(|e: FracError| Failure::Config(e.to_string()))?;
    let a = single_alpha(cfg)?;
    let f = load_input(cfg, input)?;
    let out_path = cfg.out.clone().unwrap_or_else(|| derived_path(input, kind.name()));
    let g = kind.apply(&f, a)?;
    write_grid_function(&g, &out_path)?;
    let coarse_in = f.subsample(2)?;
    let coarse = kind.apply(&coarse_in, a)?;
    let fine_at_coarse: Vec<f64> = (0..coarse.len()).map(|i| g.values()[2 * i]).collect();
    let error_estimate = interior_max_diff(coarse.values(), &fine_at_coarse, &coarse);
    let mut failed = None;
    let oracle = if cfg.oracle.unwrap_or(false) {
        let spec = apply_symbol(kind, &f, a)?;
        let path = with_suffix(&out_path, "oracle.csv");
        write_grid_function(&spec.f, &path)?;
        let max_abs_diff = interior_max_diff(g.values(), spec.f.values(), &f);
        if let Some(t) = cfg.tol.filter(|t| !(max_abs_diff <= *t)) {
            failed = Some(format!("oracle difference {max_abs_diff:e} exceeds tolerance {t:e}"));
        }
        Some(OracleSummary { path, max_abs_diff, tolerance: cfg.tol, warnings: spec.warnings })
    } else {
        None
    };
    let report = ApplyReport {
        schema: VerificationReport::SCHEMA,
        operator: kind.name(),
        alpha: a.value(),
        input: input.to_string(),
        output: out_path.clone(),
        n: f.len(),
        h: f.h(),
        error_estimate,
        oracle,
    };
    write_json(&with_suffix(&out_path, "report.json"), &report)?;
    failed.map_or(Ok(()), |m| Err(Failure::Check(m)))
}

fn cmd_verify(cfg: &CampaignConfig) -> Outcome {
    let name = cfg.suite.as_deref().ok_or_else(|| Failure::Config("--suite is required".into()))?;
    let suite: Suite = name.parse().map_err(|e: FracError| Failure::Config(e.to_string()))?;
    let alphas = cfg
        .alpha
        .clone()
        .unwrap_or_else(|| SuiteParams::DEFAULT_ALPHAS.to_vec())
        .into_iter()
        .map(Alpha::new)
        .collect::<crate::Result<Vec<_>>>()
        .map_err(|e| Failure::Config(e.to_string()))?;
    let params = SuiteParams { alphas, eps: cfg.eps.clone(), h: cfg.grid_h.unwrap_or(SuiteParams::DEFAULT_H), tol: cfg.tol };
    let report = VerificationReport::new(suite.name(), run_suite(suite, &params));
    emit_json(cfg, &report)?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} of {} checks failed", report.summary.failed, report.summary.total)))
    }
}

fn cmd_extend(cfg: &CampaignConfig, ts: &[f64], input: &str) -> Outcome {
    if ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Failure::Config("heights --t must be positive".into()));
    }
    let a = single_alpha(cfg)?;
    let f = load_input(cfg, input)?;
    let out_path = cfg.out.clone().unwrap_or_else(|| derived_path(input, "field"));
    poisson(&f, a, ts)?.write(&out_path)?;
    let trace = neumann_trace(&f, a)?;
    write_grid_function(&trace, &with_suffix(&out_path, "trace.csv"))?;
    Ok(())
}

#[derive(Serialize)]
struct DirichletReport {
    schema: u32,
    alpha: f64,
    output: PathBuf,
    truncation_estimate: f64,
    warning: Option<String>,
}

fn cmd_dirichlet(cfg: &CampaignConfig, f: &str, g: &str) -> Outcome {
    let a = single_alpha(cfg)?;
    let (f_, g_) = (load_input(cfg, f)?, load_input(cfg, g)?);
    if (f_.h() - g_.h()).abs() > 1e-12 * f_.h() {
        return Err(Failure::Config(format!("f and g have different steps {} and {}", f_.h(), g_.h())));
    }
    let sol = dirichlet_solve(&f_, &g_, a, f_.h())?;
    let out_path = cfg.out.clone().unwrap_or_else(|| derived_path(f, "dirichlet"));
    write_grid_function(&sol.u, &out_path)?;
    if let Some(w) = &sol.warning {
        eprintln!("fracalc: warning: {w}");
    }
    let report = DirichletReport {
        schema: VerificationReport::SCHEMA,
        alpha: a.value(),
        output: out_path.clone(),
        truncation_estimate: sol.truncation_estimate,
        warning: sol.warning,
    };
    write_json(&with_suffix(&out_path, "report.json"), &report)
}

fn cmd_weights(cfg: &CampaignConfig, class: WeightClass, s: Option<f64>, interval: Option<Vec<f64>>, input: &Path) -> Outcome {
    let ws = WeightSample::read(input).map_err(|e| Failure::Config(format!("{}: {e}", input.display())))?;
    let lat = Lattice::default();
    let s = s.unwrap_or(ws.p);
    if !(s > 1.0) {
        return Err(Failure::Config(format!("--s must exceed 1, got {s}")));
    }
    match class {
        WeightClass::ApPlus => emit_json(cfg, &check_ap_plus(&ws, s, &lat)?),
        WeightClass::Ap => emit_json(cfg, &check_ap(&ws, s, &lat)?),
        WeightClass::ApqPlus => emit_json(cfg, &check_apq_plus(&ws, &lat)?),
        WeightClass::Apq => emit_json(cfg, &check_apq(&ws, &lat)?),
        WeightClass::A1Plus => emit_json(cfg, &check_a1_plus(&ws)?),
        WeightClass::Integrability => {
            let a = single_alpha(cfg)?;
            let Some([lo, hi]) = interval.as_deref().map(|v| [v[0], v[1]]) else {
                return Err(Failure::Config("--interval a,b is required".into()));
            };
            emit_json(cfg, &integrability_diagnostic(&ws, lo, hi, a)?)
        }
    }
}

fn cmd_invert(cfg: &CampaignConfig, weight: Option<&Path>, range: bool, input: &str) -> Outcome {
    let a = single_alpha(cfg)?;
    let f = load_input(cfg, input)?;
    let ws = weight
        .map(|p| WeightSample::read(p).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))))
        .transpose()?;
    if range {
        let ws = ws.ok_or_else(|| Failure::Config("--range needs --weight".into()))?;
        let eps = cfg.eps.clone().unwrap_or_else(|| default_range_eps(f.h()));
        return emit_json(cfg, &range_diagnostic(&f, a, &ws, &eps)?);
    }
    let eps = cfg.eps.clone().unwrap_or_else(|| default_fftc_eps(a));
    let report = fftc_verify(&f, a, &eps, ws.as_ref())?;
    emit_json(cfg, &report)?;
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check("inversion check failed".into()))
    }
}
