//! `recinacc`: compute record-value inaccuracy measures, sweep grids, and run
//! the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 divergent
//! measure or numerical failure.

mod output;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use record_inaccuracy::measures::{
    cumulative_past_extropy_inaccuracy, cumulative_residual_extropy_inaccuracy, extropy_inaccuracy,
    kl_divergence, relative_information,
};
use record_inaccuracy::records::RecordDistribution;
use record_inaccuracy::verify::{run_suite, Report, Suite};
use record_inaccuracy::{
    Distribution, Error, EvalMethod, McConfig, MeasureResult, QuadratureConfig, RecordMeasure,
    RecordMeasureRequest, RecordSpec, Side,
};

use output::{real, write_csv, write_json, OutputRecord};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

#[derive(Parser)]
#[command(name = "recinacc", version, about = "Inaccuracy measures between k-record values and their parent law")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one measure.
    Compute(ComputeArgs),
    /// Evaluate a measure over a grid of (n, k, parameter) cells.
    Table(TableArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DistName {
    Exponential,
    Pareto,
    Weibull,
    Uniform,
    PowerDec,
    PowerInc,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MeasureName {
    Kerridge,
    Cri,
    Cpi,
    Kij,
    Crij,
    Cpij,
    Kl,
    Relinfo,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Upper,
    Lower,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Closed,
    Quad,
    Gamma,
    Mc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum)]
    dist: DistName,
    /// Distribution parameter as name=value; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    #[arg(long, value_enum)]
    measure: MeasureName,
    /// Defaults to lower for cpi and upper otherwise.
    #[arg(long, value_enum)]
    side: Option<SideArg>,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Seed for Monte Carlo evaluation.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Monte Carlo sample count.
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    /// Record index range, `A..B` inclusive or a single value.
    #[arg(long, default_value = "1")]
    n: String,
    /// Record width range, `A..B` inclusive or a single value.
    #[arg(long, default_value = "1")]
    k: String,
    /// Parameter sweep as name=v1,v2,...; repeatable.
    #[arg(long = "param-grid", value_name = "NAME=V1,V2,...")]
    param_grid: Vec<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Write the full JSON report to this file.
    #[arg(long, value_name = "FILE")]
    report: Option<String>,
    /// Print every check, not only failures.
    #[arg(long)]
    verbose: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    Suite::from_name(s).ok_or_else(|| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.as_str()).collect();
        format!("unknown suite `{s}` (expected one of {})", names.join(", "))
    })
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parameter { .. } | Error::InvalidRequest(_) | Error::NoClosedForm { .. } | Error::Probe { .. } => {
                EXIT_USAGE
            }
            Error::Domain { .. }
            | Error::Integration(_)
            | Error::Divergent(_)
            | Error::IncompleteExtraction { .. }
            | Error::Contamination { .. } => EXIT_NUMERIC,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Table(a) => table(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("recinacc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_pair(s: &str) -> Result<(&str, &str), Failure> {
    s.split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or_else(|| Failure::usage(format!("expected NAME=VALUE, got `{s}`")))
}

fn parse_real(name: &str, v: &str) -> Result<f64, Failure> {
    v.parse::<f64>()
        .map_err(|_| Failure::usage(format!("parameter {name}: `{v}` is not a number")))
}

fn param_names(dist: DistName) -> &'static [&'static str] {
    match dist {
        DistName::Exponential | DistName::Pareto => &["theta"],
        DistName::Weibull => &["lambda", "beta"],
        DistName::Uniform | DistName::PowerDec => &[],
        DistName::PowerInc => &["m"],
    }
}

fn check_param_name(dist: DistName, name: &str) -> Result<(), Failure> {
    if param_names(dist).contains(&name) {
        Ok(())
    } else {
        Err(Failure::usage(format!("unknown parameter `{name}` for this distribution")))
    }
}

fn build_dist(dist: DistName, params: &[(String, f64)]) -> Result<Distribution, Failure> {
    let get = |name: &str, default: f64| {
        params
            .iter()
            .rev()
            .find(|(k, _)| k == name)
            .map(|(_, v)| *v)
            .unwrap_or(default)
    };
    let d = match dist {
        DistName::Exponential => Distribution::exponential(get("theta", 1.0))?,
        DistName::Pareto => Distribution::pareto(get("theta", 1.0))?,
        DistName::Weibull => Distribution::weibull(get("lambda", 1.0), get("beta", 1.0))?,
        DistName::Uniform => Distribution::uniform01(),
        DistName::PowerDec => Distribution::power_decreasing(),
        DistName::PowerInc => {
            let m = get("m", 2.0);
            if m.fract() != 0.0 || !(2.0..=u32::MAX as f64).contains(&m) {
                return Err(Failure::usage(format!("parameter m must be an integer >= 2, got {m}")));
            }
            Distribution::power_increasing(m as u32)?
        }
    };
    Ok(d)
}

fn parse_params(dist: DistName, raw: &[String]) -> Result<Vec<(String, f64)>, Failure> {
    raw.iter()
        .map(|s| {
            let (k, v) = parse_pair(s)?;
            check_param_name(dist, k)?;
            Ok((k.to_string(), parse_real(k, v)?))
        })
        .collect()
}

/// Everything needed to evaluate one cell, fixed before any work starts.
struct Plan {
    measure: MeasureName,
    side: Side,
    method: MethodArg,
    seed: u64,
    samples: usize,
}

impl Plan {
    fn from_common(c: &Common) -> Result<Self, Failure> {
        let default_side = if c.measure == MeasureName::Cpi { Side::Lower } else { Side::Upper };
        let side = match c.side {
            None => default_side,
            Some(SideArg::Upper) => Side::Upper,
            Some(SideArg::Lower) => Side::Lower,
        };
        match (c.measure, side) {
            (MeasureName::Cri, Side::Lower) => return Err(Failure::usage("cri is defined for upper records")),
            (MeasureName::Cpi, Side::Upper) => return Err(Failure::usage("cpi is defined for lower records")),
            _ => {}
        }
        let record_measure = matches!(c.measure, MeasureName::Kerridge | MeasureName::Cri | MeasureName::Cpi);
        if !record_measure && !matches!(c.method, MethodArg::Auto | MethodArg::Quad) {
            return Err(Failure::usage("two-distribution measures support only --method auto or quad"));
        }
        if c.method == MethodArg::Mc {
            McConfig::new(c.samples, c.seed)?;
        }
        Ok(Self {
            measure: c.measure,
            side,
            method: c.method,
            seed: c.seed,
            samples: c.samples,
        })
    }

    fn measure_name(&self) -> &'static str {
        match self.measure {
            MeasureName::Kerridge => "kerridge",
            MeasureName::Cri => "cri",
            MeasureName::Cpi => "cpi",
            MeasureName::Kij => "kij",
            MeasureName::Crij => "crij",
            MeasureName::Cpij => "cpij",
            MeasureName::Kl => "kl",
            MeasureName::Relinfo => "relinfo",
        }
    }

    fn evaluate(&self, parent: &Distribution, spec: RecordSpec) -> Result<MeasureResult, Error> {
        let quad = QuadratureConfig::default();
        let record_measure = match self.measure {
            MeasureName::Kerridge => Some(RecordMeasure::Kerridge),
            MeasureName::Cri => Some(RecordMeasure::Cri),
            MeasureName::Cpi => Some(RecordMeasure::Cpi),
            _ => None,
        };
        if let Some(m) = record_measure {
            let method = match self.method {
                MethodArg::Auto => EvalMethod::Auto,
                MethodArg::Closed => EvalMethod::ClosedForm,
                MethodArg::Quad => EvalMethod::Quadrature,
                MethodArg::Gamma => EvalMethod::GammaExpectation,
                MethodArg::Mc => EvalMethod::MonteCarlo,
            };
            let mc = McConfig::new(self.samples.max(1000), self.seed)?;
            return RecordMeasureRequest::new(parent.clone(), spec, m, method)?.evaluate(&quad, &mc);
        }
        // two-distribution measures: the record law against its parent
        let x = RecordDistribution::new(parent.clone(), spec);
        match self.measure {
            MeasureName::Kij => extropy_inaccuracy(&x, parent, &quad),
            MeasureName::Crij => cumulative_residual_extropy_inaccuracy(&x, parent, &quad),
            MeasureName::Cpij => cumulative_past_extropy_inaccuracy(&x, parent, &quad),
            MeasureName::Kl => kl_divergence(&x, parent, &quad),
            MeasureName::Relinfo => relative_information(&x, parent, &quad),
            MeasureName::Kerridge | MeasureName::Cri | MeasureName::Cpi => unreachable!("handled above"),
        }
    }

    fn record(&self, parent: &Distribution, n: u32, k: u32, outcome: Result<MeasureResult, String>) -> OutputRecord {
        OutputRecord {
            measure: self.measure_name(),
            dist: parent.name(),
            params: parent.params(),
            side: self.side.as_str(),
            n,
            k,
            outcome,
            seed: (self.method == MethodArg::Mc).then_some(self.seed),
        }
    }
}

fn emit(rows: &[OutputRecord], format: Format) {
    let text = match format {
        Format::Json => write_json(rows),
        Format::Csv => write_csv(rows),
    };
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn compute(a: ComputeArgs) -> Result<u8, Failure> {
    let plan = Plan::from_common(&a.common)?;
    let params = parse_params(a.common.dist, &a.common.params)?;
    let parent = build_dist(a.common.dist, &params)?;
    let spec = RecordSpec::new(plan.side, a.n, a.k)?;
    let r = plan.evaluate(&parent, spec)?;
    emit(&[plan.record(&parent, a.n, a.k, Ok(r))], a.common.format);
    Ok(0)
}

fn parse_range(flag: &str, s: &str) -> Result<Vec<u32>, Failure> {
    let bad = || Failure::usage(format!("--{flag}: expected A..B or an integer, got `{s}`"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse::<u32>().map_err(|_| bad())?, b.trim().parse::<u32>().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse::<u32>().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(Failure::usage(format!("--{flag}: range `{s}` is empty or starts below 1")));
    }
    Ok((lo..=hi).collect())
}

fn parse_grid(dist: DistName, raw: &[String]) -> Result<Vec<(String, Vec<f64>)>, Failure> {
    let mut grid = Vec::new();
    for s in raw {
        let (name, values) = parse_pair(s)?;
        check_param_name(dist, name)?;
        let mut vs = values
            .split(',')
            .map(|v| parse_real(name, v.trim()))
            .collect::<Result<Vec<_>, _>>()?;
        if vs.is_empty() {
            return Err(Failure::usage(format!("--param-grid {name}: no values")));
        }
        vs.sort_by(f64::total_cmp);
        vs.dedup();
        grid.push((name.to_string(), vs));
    }
    Ok(grid)
}

// Cartesian product of the grid, each point a list of (name, value) in grid order.
fn grid_points(grid: &[(String, Vec<f64>)]) -> Vec<Vec<(String, f64)>> {
    grid.iter().fold(vec![Vec::new()], |acc, (name, values)| {
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut p = prefix.clone();
                    p.push((name.clone(), *v));
                    p
                })
            })
            .collect()
    })
}

fn table(a: TableArgs) -> Result<u8, Failure> {
    let plan = Plan::from_common(&a.common)?;
    let ns = parse_range("n", &a.n)?;
    let ks = parse_range("k", &a.k)?;
    let fixed = parse_params(a.common.dist, &a.common.params)?;
    let grid = parse_grid(a.common.dist, &a.param_grid)?;

    // parents are built up front so parameter errors are usage errors
    let parents = grid_points(&grid)
        .into_iter()
        .map(|point| {
            let mut params = fixed.clone();
            params.extend(point);
            build_dist(a.common.dist, &params)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let parents = &parents;
    let cells: Vec<(u32, u32, &Distribution)> = ns
        .iter()
        .flat_map(|&n| ks.iter().flat_map(move |&k| parents.iter().map(move |p| (n, k, p))))
        .collect();
    let rows: Vec<OutputRecord> = cells
        .par_iter()
        .map(|&(n, k, parent)| {
            let outcome = RecordSpec::new(plan.side, n, k)
                .and_then(|spec| plan.evaluate(parent, spec))
                .map_err(|e| e.to_string());
            plan.record(parent, n, k, outcome)
        })
        .collect();

    let failed = rows.iter().filter(|r| r.outcome.is_err()).count();
    for r in rows.iter().filter_map(|r| r.outcome.as_ref().err()) {
        eprintln!("recinacc: cell failed: {r}");
    }
    emit(&rows, a.common.format);
    Ok(if failed == rows.len() { EXIT_NUMERIC } else { 0 })
}

fn report_json(r: &Report) -> serde_json::Value {
    let checks: Vec<_> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "relation": c.relation.as_str(),
                "expected": c.expected,
                "actual": c.actual,
                "tolerance": c.tolerance,
                "passed": c.passed,
                "error": c.error,
            })
        })
        .collect();
    json!({
        "suite": r.suite.as_str(),
        "seed": r.seed,
        "passed": r.passed(),
        "total": r.checks.len(),
        "failed": r.failures().count(),
        "checks": checks,
    })
}

fn verify(a: VerifyArgs) -> Result<u8, Failure> {
    let report = run_suite(a.suite, a.seed);
    let mut out = String::new();
    for c in &report.checks {
        if c.passed && !a.verbose {
            continue;
        }
        let status = if c.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {}: actual {} {} expected {} (tolerance {})",
            c.name,
            real(c.actual),
            c.relation.as_str(),
            real(c.expected),
            real(c.tolerance)
        ));
        if let Some(e) = &c.error {
            out.push_str(&format!(" [{e}]"));
        }
        out.push('\n');
    }
    let failed = report.failures().count();
    out.push_str(&format!(
        "{} {}: {} checks, {} failed\n",
        if failed == 0 { "PASS" } else { "FAIL" },
        report.suite.as_str(),
        report.checks.len(),
        failed
    ));
    print!("{out}");
    if let Some(path) = &a.report {
        let text = serde_json::to_string_pretty(&report_json(&report)).expect("report serializes");
        fs::write(path, text + "\n").map_err(|e| Failure {
            code: EXIT_NUMERIC,
            message: format!("cannot write report {path}: {e}"),
        })?;
    }
    Ok(if failed == 0 { 0 } else { EXIT_VERIFY })
}
