//! Command-line front end.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::boson::{eigen_operator, series_solve, solution_json, verify_eigen, verify_rep, EigenChecks, EigenMode, EigenProblem};
use crate::lie_bialgebra::{coproduct_leaves_subalgebra, verify_bialgebra};
use crate::nc_hopf::{builtin, h6_twophoton, schrodinger11, transport_structure, verify_hopf, verify_rmatrix, H6, SCHRODINGER};
use crate::report::{CheckEntry, VerificationReport};
use crate::scalar::{frac, parse_rational, ComplexRational, Rational};
use crate::schrodinger::{
    exact_solutions, exponential_solution, heat_polynomial, sample_csv, verify_discrete, DiscreteChecks, Family,
    RealizationParams, SchrodingerError,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twophoton", version, about = "Exact checks for the quantum two-photon and Schrödinger algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity checks and write a report.
    Verify(VerifyArgs),
    /// Dump a built-in presentation with its Hopf tables as JSON.
    ExportSpec(ExportArgs),
    /// Series solution of the eigenstate equation.
    Solve(SolveArgs),
    /// Certified solutions of the discrete equation as JSON.
    Solutions(SolutionsArgs),
    /// CSV samples of one solution on the time lattice.
    Sample(SampleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Algebra {
    H6,
    Sch,
    Both,
}

impl Algebra {
    fn specs(self) -> Vec<&'static str> {
        match self {
            Algebra::H6 => vec![H6],
            Algebra::Sch => vec![SCHRODINGER],
            Algebra::Both => vec![H6, SCHRODINGER],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Bialgebra,
    Hopf,
    Rmatrix,
    Rep,
    Eigen,
    DiscreteSe,
}

impl Check {
    const ALL: [Check; 6] = [Check::Bialgebra, Check::Hopf, Check::Rmatrix, Check::Rep, Check::Eigen, Check::DiscreteSe];

    fn name(self) -> &'static str {
        match self {
            Check::Bialgebra => "bialgebra",
            Check::Hopf => "hopf",
            Check::Rmatrix => "rmatrix",
            Check::Rep => "rep",
            Check::Eigen => "eigen",
            Check::DiscreteSe => "discrete-se",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s)
}

fn positive_rational(s: &str) -> Result<Rational, String> {
    let q = parse_rational(s)?;
    if !q.is_positive() {
        return Err(format!("`{s}` must be positive"));
    }
    Ok(q)
}

fn complex(s: &str) -> Result<ComplexRational, String> {
    ComplexRational::parse(s)
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "both", env = "TWOPHOTON_ALGEBRA")]
    pub algebra: Algebra,
    /// Truncation order k of the deformation parameter.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=8), env = "TWOPHOTON_ORDER")]
    pub order: u8,
    /// Value of z where a number is needed (eigen series, discrete equation).
    #[arg(long, default_value = "1/10", value_parser = positive_rational, env = "TWOPHOTON_Z")]
    pub z: Rational,
    #[arg(long, default_value = "1", value_parser = rational, env = "TWOPHOTON_MASS")]
    pub mass: Rational,
    /// Representation label a of the space-time realization.
    #[arg(long = "rep-param", default_value = "-1/2", value_parser = rational, env = "TWOPHOTON_REP_PARAM", allow_hyphen_values = true)]
    pub rep_param: Rational,
    /// Comma-separated subset of checks; all by default.
    #[arg(long, value_enum, value_delimiter = ',', env = "TWOPHOTON_CHECKS")]
    pub checks: Vec<Check>,
    #[command(flatten)]
    pub eigen: EigenArgs,
    /// Highest heat-polynomial degree in the discrete-equation suite.
    #[arg(long = "heat-degree", default_value_t = 5, env = "TWOPHOTON_HEAT_DEGREE")]
    pub heat_degree: u32,
    /// Comma-separated κ values for the exponential solutions.
    #[arg(long, value_delimiter = ',', default_value = "1,-1/2,2/3", value_parser = rational, env = "TWOPHOTON_KAPPAS", allow_hyphen_values = true)]
    pub kappas: Vec<Rational>,
    /// JSON report path.
    #[arg(long, env = "TWOPHOTON_OUT")]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, default_value_t = 0, env = "TWOPHOTON_WORKERS")]
    pub workers: usize,
    /// Leave the timing field out of the JSON report.
    #[arg(long = "no-timings", env = "TWOPHOTON_NO_TIMINGS")]
    pub no_timings: bool,
    /// What to print on stdout.
    #[arg(long, value_enum, default_value = "text", env = "TWOPHOTON_FORMAT")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    /// β₁..β₅ (coefficients of N, B-, B+, A-, A+), comma-separated.
    #[arg(long, value_delimiter = ',', num_args = 1, default_value = "1,1,1,1,1", value_parser = complex, env = "TWOPHOTON_BETA", allow_hyphen_values = true)]
    pub beta: Vec<ComplexRational>,
    #[arg(long, default_value = "1", value_parser = complex, env = "TWOPHOTON_LAMBDA", allow_hyphen_values = true)]
    pub lambda: ComplexRational,
    /// Degree of the series solution.
    #[arg(long, default_value_t = 30, env = "TWOPHOTON_DEGREE")]
    pub degree: usize,
}

impl EigenArgs {
    fn problem(&self) -> Result<EigenProblem, CliError> {
        let beta: [ComplexRational; 5] =
            self.beta.clone().try_into().map_err(|_| CliError::Usage("--beta needs exactly five values".into()))?;
        EigenProblem::new(beta, self.lambda.clone()).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value = "h6", env = "TWOPHOTON_ALGEBRA")]
    pub algebra: Algebra,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=8), env = "TWOPHOTON_ORDER")]
    pub order: u8,
    #[arg(long, env = "TWOPHOTON_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SolveMode {
    Classical,
    FirstOrder,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub eigen: EigenArgs,
    #[arg(long, value_enum, default_value = "first-order")]
    pub mode: SolveMode,
    #[arg(long, default_value = "1/10", value_parser = rational, env = "TWOPHOTON_Z")]
    pub z: Rational,
    /// Values for free coefficients as `index=value`, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub seed: Vec<String>,
    #[arg(long, env = "TWOPHOTON_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RealizationArgs {
    #[arg(long, default_value = "1/10", value_parser = positive_rational, env = "TWOPHOTON_Z")]
    pub z: Rational,
    #[arg(long, default_value = "1", value_parser = rational, env = "TWOPHOTON_MASS")]
    pub mass: Rational,
    /// Use the undeformed equation `(∂x² − 2m∂t)φ = 0`.
    #[arg(long)]
    pub classical: bool,
}

impl RealizationArgs {
    fn params(&self) -> RealizationParams {
        if self.classical {
            // z still fixes the sampling lattice
            RealizationParams { z: self.z.clone(), ..RealizationParams::classical(self.mass.clone(), frac(-1, 2)) }
        } else {
            RealizationParams::deformed(self.z.clone(), self.mass.clone(), frac(-1, 2))
        }
    }
}

#[derive(Debug, Args)]
pub struct SolutionsArgs {
    #[command(flatten)]
    pub realization: RealizationArgs,
    #[arg(long = "heat-degree", default_value_t = 5)]
    pub heat_degree: u32,
    #[arg(long, value_delimiter = ',', default_value = "1,-1/2,2/3", value_parser = rational, allow_hyphen_values = true)]
    pub kappas: Vec<Rational>,
    #[arg(long, env = "TWOPHOTON_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub realization: RealizationArgs,
    /// Heat polynomial of this degree.
    #[arg(long, conflicts_with = "kappa", required_unless_present = "kappa")]
    pub heat: Option<u32>,
    /// Exponential solution with this κ.
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub kappa: Option<Rational>,
    #[arg(long, default_value = "-1", value_parser = rational, allow_hyphen_values = true)]
    pub x0: Rational,
    #[arg(long, default_value = "1", value_parser = rational, allow_hyphen_values = true)]
    pub x1: Rational,
    #[arg(long, default_value_t = 11)]
    pub nx: usize,
    #[arg(long, default_value = "0", value_parser = rational, allow_hyphen_values = true)]
    pub t0: Rational,
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[arg(long, env = "TWOPHOTON_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => m,
        }
    }
}

fn internal(e: impl std::fmt::Display) -> CliError {
    CliError::Internal(e.to_string())
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| internal(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(internal)
        }
    }
}

type Task = Box<dyn Fn() -> Result<VerificationReport, String> + Send + Sync>;

fn tasks(args: &VerifyArgs) -> Result<Vec<Task>, CliError> {
    let checks: Vec<Check> = if args.checks.is_empty() { Check::ALL.to_vec() } else { args.checks.clone() };
    let k = args.order as usize;
    let mut out: Vec<Task> = Vec::new();
    let specs = args.algebra.specs();
    for check in checks {
        match check {
            Check::Bialgebra => out.push(Box::new(move || verify_bialgebra(k).map_err(|e| e.to_string()))),
            Check::Hopf => {
                for name in specs.clone() {
                    out.push(Box::new(move || {
                        let spec = builtin(name, k).map_err(|e| e.to_string())?;
                        verify_hopf(&spec).map_err(|e| e.to_string())
                    }));
                }
                if specs.contains(&H6) {
                    out.push(Box::new(move || h4_record(k)));
                }
                if specs.contains(&SCHRODINGER) {
                    out.push(Box::new(move || {
                        let from = h6_twophoton(k).map_err(|e| e.to_string())?;
                        let t = transport_structure(&from).map_err(|e| e.to_string())?;
                        let to = schrodinger11(k).map_err(|e| e.to_string())?;
                        crate::nc_hopf::verify_spec_equality(&t, &to).map_err(|e| e.to_string())
                    }));
                }
            }
            Check::Rmatrix => {
                for name in specs.clone() {
                    out.push(Box::new(move || {
                        let spec = builtin(name, k).map_err(|e| e.to_string())?;
                        verify_rmatrix(&spec).map_err(|e| e.to_string())
                    }));
                }
            }
            Check::Rep => out.push(Box::new(move || verify_rep(k).map_err(|e| e.to_string()))),
            Check::Eigen => {
                let cfg = EigenChecks { problem: args.eigen.problem()?, z: args.z.clone(), degree: args.eigen.degree };
                out.push(Box::new(move || verify_eigen(&cfg).map_err(|e| e.to_string())));
            }
            Check::DiscreteSe => {
                let cfg = DiscreteChecks {
                    z: args.z.clone(),
                    m: args.mass.clone(),
                    a: args.rep_param.clone(),
                    degree: args.heat_degree,
                    kappas: args.kappas.clone(),
                };
                if cfg.m.is_zero() {
                    return Err(CliError::Usage("--mass must be nonzero".into()));
                }
                out.push(Box::new(move || verify_discrete(&cfg).map_err(|e| e.to_string())));
            }
        }
    }
    Ok(out)
}

/// Records which h4 generators have a coproduct leaving the subalgebra
/// generated by `N, A+, A-, M`. This is informational and always passes.
fn h4_record(k: usize) -> Result<VerificationReport, String> {
    let start = Instant::now();
    let spec = h6_twophoton(k).map_err(|e| e.to_string())?;
    let escaping = coproduct_leaves_subalgebra(&spec, &["N", "A+", "A-", "M"]).map_err(|e| e.to_string())?;
    let detail = if escaping.is_empty() { "0".to_string() } else { format!("Δ leaves h4 for {}", escaping.join(", ")) };
    let entry = CheckEntry::new("hopf", format!("{H6}/h4-coproduct-record")).param("k", k).outcome(true, detail);
    Ok(std::iter::once(entry.since(start)).collect())
}

fn config_json(args: &VerifyArgs) -> Value {
    let checks: Vec<&str> = if args.checks.is_empty() {
        Check::ALL.iter().map(|c| c.name()).collect()
    } else {
        let mut c = args.checks.clone();
        c.sort();
        c.dedup();
        c.iter().map(|c| c.name()).collect()
    };
    json!({
        "algebra": format!("{:?}", args.algebra).to_lowercase(),
        "order": args.order,
        "z": args.z.to_string(),
        "mass": args.mass.to_string(),
        "rep_param": args.rep_param.to_string(),
        "checks": checks,
        "beta": args.eigen.beta.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "lambda": args.eigen.lambda.to_string(),
        "degree": args.eigen.degree,
        "heat_degree": args.heat_degree,
        "kappas": args.kappas.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
    })
}

/// `{config, entries, summary}` plus `timings` (milliseconds per entry key)
/// unless `with_timings` is false.
pub fn report_json(config: Value, report: &VerificationReport, with_timings: bool) -> Value {
    let mut out = json!({
        "config": config,
        "entries": report.entries(),
        "summary": report.summary(),
    });
    if with_timings {
        out["timings"] = json!(report.timings());
    }
    out
}

/// Runs the selected checks on a pool of `args.workers` threads.
pub fn run_verify(args: &VerifyArgs) -> Result<VerificationReport, CliError> {
    let tasks = tasks(args)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(args.workers).build().map_err(internal)?;
    let results: Vec<Result<VerificationReport, String>> = pool.install(|| tasks.par_iter().map(|t| t()).collect());
    let mut report = VerificationReport::new();
    for r in results {
        report.merge(r.map_err(CliError::Internal)?);
    }
    Ok(report)
}

fn verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let report = run_verify(args)?;
    let json = report_json(config_json(args), &report, !args.no_timings);
    let text = serde_json::to_string_pretty(&json).map_err(internal)? + "\n";
    if let Some(path) = &args.out {
        fs::write(path, &text).map_err(|e| internal(format!("{}: {e}", path.display())))?;
    }
    match args.format {
        Format::Text => print!("{}", report.render_text()),
        Format::Json => print!("{text}"),
    }
    Ok(if report.summary().failed == 0 { EXIT_PASS } else { EXIT_FAIL })
}

fn export_spec(args: &ExportArgs) -> Result<i32, CliError> {
    let k = args.order as usize;
    let mut specs = BTreeMap::new();
    for name in args.algebra.specs() {
        specs.insert(name.to_string(), builtin(name, k).map_err(internal)?.to_json());
    }
    let value = if specs.len() == 1 { specs.into_values().next().expect("one spec") } else { json!(specs) };
    write_output(&args.out, &(serde_json::to_string_pretty(&value).map_err(internal)? + "\n"))?;
    Ok(EXIT_PASS)
}

fn solve(args: &SolveArgs) -> Result<i32, CliError> {
    let problem = args.eigen.problem()?;
    let mut seeds = BTreeMap::new();
    for s in &args.seed {
        let (i, v) = s.split_once('=').ok_or_else(|| CliError::Usage(format!("seed `{s}` is not index=value")))?;
        let i: usize = i.trim().parse().map_err(|_| CliError::Usage(format!("bad seed index in `{s}`")))?;
        seeds.insert(i, ComplexRational::parse(v).map_err(CliError::Usage)?);
    }
    let op = match args.mode {
        SolveMode::Classical => eigen_operator(&problem, 0, EigenMode::Classical),
        SolveMode::FirstOrder => eigen_operator(&problem, 1, EigenMode::FirstOrder)
            .map(|op| op.at_z(&ComplexRational::real(args.z.clone()))),
    }
    .map_err(internal)?;
    let sol = series_solve(&op, args.eigen.degree, &seeds).map_err(|e| CliError::Usage(e.to_string()))?;
    let value = json!({
        "beta": problem.beta.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "lambda": problem.lambda.to_string(),
        "mode": format!("{:?}", args.mode).to_lowercase(),
        "z": args.z.to_string(),
        "degree": args.eigen.degree,
        "operator": op.render(),
        "solution": solution_json(&sol),
    });
    write_output(&args.out, &(serde_json::to_string_pretty(&value).map_err(internal)? + "\n"))?;
    Ok(EXIT_PASS)
}

fn schrodinger_usage(e: SchrodingerError) -> CliError {
    match e {
        SchrodingerError::DegenerateKappa(_) | SchrodingerError::ZeroMass | SchrodingerError::NonPositiveZ(_) => {
            CliError::Usage(e.to_string())
        }
        other => internal(other),
    }
}

fn solutions(args: &SolutionsArgs) -> Result<i32, CliError> {
    let p = args.realization.params();
    let mut list = exact_solutions(&p, &Family::Polynomial { max_degree: args.heat_degree }).map_err(schrodinger_usage)?;
    list.extend(exact_solutions(&p, &Family::Exponential { kappas: args.kappas.clone() }).map_err(schrodinger_usage)?);
    let all_certified = list.iter().all(|s| s.certified());
    let records: Vec<_> = list.iter().map(|s| s.function.to_record(&s.label, &s.residual)).collect();
    let value = json!({ "params": p, "solutions": records });
    write_output(&args.out, &(serde_json::to_string_pretty(&value).map_err(internal)? + "\n"))?;
    Ok(if all_certified { EXIT_PASS } else { EXIT_FAIL })
}

fn sample(args: &SampleArgs) -> Result<i32, CliError> {
    let p = args.realization.params();
    let phi = match (&args.heat, &args.kappa) {
        (Some(n), _) => heat_polynomial(*n, &p),
        (None, Some(k)) => exponential_solution(k, &p),
        (None, None) => return Err(CliError::Usage("one of --heat or --kappa is required".into())),
    }
    .map_err(schrodinger_usage)?;
    let mut buf = Vec::new();
    sample_csv(&phi, &args.x0, &args.x1, args.nx, &args.t0, args.steps, &mut buf).map_err(schrodinger_usage)?;
    write_output(&args.out, &String::from_utf8(buf).map_err(internal)?)?;
    Ok(EXIT_PASS)
}

/// Executes a parsed command and returns the process exit status.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Verify(a) => verify(a),
        Command::ExportSpec(a) => export_spec(a),
        Command::Solve(a) => solve(a),
        Command::Solutions(a) => solutions(a),
        Command::Sample(a) => sample(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}
