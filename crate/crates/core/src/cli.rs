//! Command-line front end: run verification suites, export ensemble
//! samples as CSV, and print exact closed-form tables.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on configuration
//! errors. All randomness flows through `--seed`; omitting it selects the
//! recorded default, never wall-clock entropy. `CFTV_DEFAULT_SAMPLES`
//! overrides the default sample count.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::closed_forms::{schur_selberg_bosonic, schur_selberg_fermionic, Derivation};
use crate::ensembles::{
    sample_boundary_truncation, sample_fermionic_matrix, sample_haar_unitary,
    sample_jacobi_radial, sample_special_unitary, sample_truncation_radial, SeededRng,
};
use crate::error::Result;
use crate::exact::format_rational;
use crate::identities::{registry, run_suite, ConfigOverrides, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::linalg::CMat;
use crate::partitions::{enumerate_partitions, Partition};
use crate::report::{Report, SuiteConfig};
use crate::symmetric::{
    exp_coeff, hua_coeff_bosonic, hua_coeff_bosonic_exact, hua_coeff_fermionic,
    hua_coeff_fermionic_exact, weyl_dimension,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "cftv",
    version,
    about = "Monte Carlo and exact verification of matrix-integral identities over unitary ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every registered check with its regime and statement
    List,
    /// Run checks (all of them when no names are given) and write a JSON report
    Verify(VerifyArgs),
    /// Draw ensemble samples and write them as CSV
    Sample(SampleArgs),
    /// Print exact closed-form tables as CSV or JSON
    Table(TableArgs),
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// Check names from `list`; empty runs the full suite
    pub names: Vec<String>,
    /// Unitary group dimension N
    #[arg(long = "N")]
    pub dim: Option<u32>,
    /// Truncation row count n
    #[arg(long)]
    pub n: Option<u32>,
    /// Truncation column count m
    #[arg(long)]
    pub m: Option<u32>,
    /// Partition in text form, e.g. "2,1"
    #[arg(long)]
    pub lambda: Option<String>,
    /// Monte Carlo draws per estimate
    #[arg(long)]
    pub samples: Option<u64>,
    /// Base seed; each check also runs at seed+1
    #[arg(long)]
    pub seed: Option<u64>,
    /// z-score pass threshold
    #[arg(long)]
    pub z: Option<f64>,
    /// Report destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Ensemble: haar | su | truncation | jacobi-radial | fermionic | boundary
    pub ensemble: String,
    #[arg(long = "N")]
    pub dim: Option<u32>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Radial weight exponent a (jacobi-radial)
    #[arg(long)]
    pub a: Option<u32>,
    /// Radial weight exponent b (jacobi-radial)
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long, default_value_t = 10)]
    pub count: u64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Table: weyl | selberg-b | selberg-f | hua-b | hua-f | exp-coeff
    pub kind: String,
    /// Single partition; omitted means a grid up to --max-weight
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    /// Grid bound on |lambda| (max 8)
    #[arg(long, default_value_t = 4)]
    pub max_weight: u32,
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn default_samples() -> u64 {
    std::env::var("CFTV_DEFAULT_SAMPLES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_SAMPLES)
}

fn write_output(path: &Option<PathBuf>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())
        }
    }
}

pub fn cmd_list() -> i32 {
    let mut defs: Vec<_> = registry().iter().collect();
    defs.sort_by_key(|d| d.name);
    let mut out = String::new();
    for d in defs {
        out.push_str(&format!("{} | {} | {}\n", d.name, d.regime, d.statement));
    }
    print!("{out}");
    EXIT_OK
}

pub fn cmd_verify(args: &VerifyArgs) -> i32 {
    let lambda = match &args.lambda {
        Some(s) => match s.parse::<Partition>() {
            Ok(l) => Some(l),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG_ERROR;
            }
        },
        None => None,
    };
    let names: Vec<String> = if args.names.is_empty() {
        registry().iter().map(|d| d.name.to_string()).collect()
    } else {
        args.names.clone()
    };
    let n_samples = args.samples.unwrap_or_else(default_samples);
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let overrides = ConfigOverrides {
        dim: args.dim,
        rows: args.n,
        cols: args.m,
        lambda: lambda.clone(),
        n_samples: Some(n_samples),
        seed: Some(seed),
        z_threshold: args.z,
    };
    let results = run_suite(&names, &overrides);
    let unknown = results
        .iter()
        .any(|r| r.notes.starts_with("unknown check name"));
    let config_error = results
        .iter()
        .any(|r| r.notes.starts_with("configuration error"));
    let report = Report::new(
        SuiteConfig {
            checks: names,
            dim: args.dim,
            n: args.n,
            m: args.m,
            lambda: lambda.map(|l| l.to_string()),
            n_samples,
            seed,
            z_threshold: args.z.unwrap_or(crate::montecarlo::DEFAULT_Z_THRESHOLD),
        },
        results,
    );
    let pass = report.pass;
    let mut json = report.to_json();
    json.push('\n');
    if let Err(e) = write_output(&args.out, &json) {
        eprintln!("error: cannot write report: {e}");
        return EXIT_CONFIG_ERROR;
    }
    if unknown || config_error {
        for r in report.results.iter().filter(|r| !r.pass) {
            eprintln!("{}: {}", r.name, r.notes);
        }
        EXIT_CONFIG_ERROR
    } else if pass {
        EXIT_OK
    } else {
        for r in report.results.iter().filter(|r| !r.pass) {
            eprintln!("FAIL {} (z={:.2}): {}", r.name, r.z, r.notes);
        }
        EXIT_CHECK_FAILED
    }
}

fn matrix_header(rows: usize, cols: usize) -> String {
    let mut cells = Vec::with_capacity(rows * cols * 2);
    for i in 0..rows {
        for j in 0..cols {
            cells.push(format!("re_{i}_{j}"));
            cells.push(format!("im_{i}_{j}"));
        }
    }
    cells.join(",")
}

fn matrix_row(m: &CMat) -> String {
    let mut cells = Vec::with_capacity(m.nrows() * m.ncols() * 2);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            cells.push(format!("{}", m[(i, j)].re));
            cells.push(format!("{}", m[(i, j)].im));
        }
    }
    cells.join(",")
}

fn radial_header(m: usize) -> String {
    (0..m).map(|i| format!("x_{i}")).collect::<Vec<_>>().join(",")
}

fn radial_row(x: &[f64]) -> String {
    x.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(",")
}

pub fn cmd_sample(args: &SampleArgs) -> i32 {
    let seed = args.seed.unwrap_or(DEFAULT_SEED);
    let mut rng = SeededRng::new(seed, 0);
    let count = args.count;
    let need = |v: Option<u32>, name: &str| -> std::result::Result<usize, String> {
        v.map(|x| x as usize)
            .ok_or_else(|| format!("missing required parameter --{name}"))
    };
    let mut run = || -> std::result::Result<String, String> {
        let mut body = String::new();
        match args.ensemble.as_str() {
            "haar" | "su" => {
                let dim = need(args.dim, "N")?;
                if dim == 0 {
                    return Err("N must be positive".into());
                }
                body.push_str(&matrix_header(dim, dim));
                body.push('\n');
                for _ in 0..count {
                    let u = if args.ensemble == "haar" {
                        sample_haar_unitary(dim, &mut rng)
                    } else {
                        sample_special_unitary(dim, &mut rng)
                    };
                    body.push_str(&matrix_row(&u));
                    body.push('\n');
                }
            }
            "truncation" => {
                let dim = need(args.dim, "N")?;
                let n = need(args.n, "n")?;
                let m = need(args.m, "m")?;
                body.push_str(&radial_header(m));
                body.push('\n');
                for _ in 0..count {
                    let x = sample_truncation_radial(dim, n, m, &mut rng)
                        .map_err(|e| e.to_string())?;
                    body.push_str(&radial_row(&x));
                    body.push('\n');
                }
            }
            "jacobi-radial" => {
                let a = need(args.a, "a")?;
                let b = need(args.b, "b")?;
                let m = need(args.m, "m")?;
                body.push_str(&radial_header(m));
                body.push('\n');
                for _ in 0..count {
                    let x =
                        sample_jacobi_radial(a, b, m, &mut rng).map_err(|e| e.to_string())?;
                    body.push_str(&radial_row(&x));
                    body.push('\n');
                }
            }
            "fermionic" => {
                let dim = need(args.dim, "N")?;
                let n = need(args.n, "n")?;
                let m = need(args.m, "m")?;
                body.push_str(&matrix_header(n, m));
                body.push('\n');
                for _ in 0..count {
                    let q = sample_fermionic_matrix(dim, n, m, &mut rng)
                        .map_err(|e| e.to_string())?;
                    body.push_str(&matrix_row(&q));
                    body.push('\n');
                }
            }
            "boundary" => {
                let dim = need(args.dim, "N")?;
                let m = need(args.m, "m")?;
                body.push_str(&matrix_header(m, m));
                body.push('\n');
                for _ in 0..count {
                    let q = sample_boundary_truncation(dim, m, &mut rng)
                        .map_err(|e| e.to_string())?;
                    body.push_str(&matrix_row(&q));
                    body.push('\n');
                }
            }
            other => return Err(format!("unknown ensemble '{other}'")),
        }
        Ok(body)
    };
    match run() {
        Ok(body) => {
            if let Err(e) = write_output(&args.out, &body) {
                eprintln!("error: cannot write samples: {e}");
                return EXIT_CONFIG_ERROR;
            }
            EXIT_OK
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG_ERROR
        }
    }
}

const TABLE_MAX_WEIGHT: u32 = 8;
const TABLE_MAX_M: u32 = 4;

fn table_value(kind: &str, lambda: &Partition, args: &TableArgs) -> Result<String> {
    use crate::error::Error;
    let need_u32 = |v: Option<u32>, name: &str| {
        v.ok_or_else(|| Error::BadParameter(format!("missing required parameter --{name}")))
    };
    let need_f64 = |v: Option<f64>, name: &str| {
        v.ok_or_else(|| Error::BadParameter(format!("missing required parameter --{name}")))
    };
    match kind {
        "weyl" => {
            let n = need_u32(args.n, "n")?;
            Ok(format_rational(&weyl_dimension(lambda, n)))
        }
        "exp-coeff" => Ok(format_rational(&exp_coeff(lambda))),
        "selberg-b" | "selberg-f" => {
            let p = need_f64(args.p, "p")?;
            let q = need_f64(args.q, "q")?;
            let m = need_u32(args.m, "m")?;
            let v = if kind == "selberg-b" {
                schur_selberg_bosonic(lambda, p, q, m, Derivation::ProductForm)?
            } else {
                schur_selberg_fermionic(lambda, p, q, m, Derivation::ProductForm)?
            };
            Ok(v.describe())
        }
        "hua-b" | "hua-f" => {
            let a = need_f64(args.a, "a")?;
            let m = need_u32(args.m, "m")? as usize;
            if a.fract() == 0.0 {
                let v = if kind == "hua-b" {
                    hua_coeff_bosonic_exact(lambda, a as i64, m)?
                } else {
                    hua_coeff_fermionic_exact(lambda, a as i64, m)?
                };
                Ok(format_rational(&v))
            } else {
                let v = if kind == "hua-b" {
                    hua_coeff_bosonic(lambda, a, m)?
                } else {
                    hua_coeff_fermionic(lambda, a, m)?
                };
                Ok(format!("{v}"))
            }
        }
        other => Err(Error::BadParameter(format!("unknown table kind '{other}'"))),
    }
}

pub fn cmd_table(args: &TableArgs) -> i32 {
    if args.max_weight > TABLE_MAX_WEIGHT {
        eprintln!("error: --max-weight is capped at {TABLE_MAX_WEIGHT}");
        return EXIT_CONFIG_ERROR;
    }
    if let Some(m) = args.m {
        if m > TABLE_MAX_M {
            eprintln!("error: --m is capped at {TABLE_MAX_M} for tables");
            return EXIT_CONFIG_ERROR;
        }
    }
    let lambdas: Vec<Partition> = match &args.lambda {
        Some(s) => match s.parse::<Partition>() {
            Ok(l) => {
                if l.weight() > TABLE_MAX_WEIGHT {
                    eprintln!("error: |lambda| is capped at {TABLE_MAX_WEIGHT}");
                    return EXIT_CONFIG_ERROR;
                }
                vec![l]
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG_ERROR;
            }
        },
        None => {
            let len_bound = args.m.unwrap_or(TABLE_MAX_M);
            enumerate_partitions(args.max_weight, len_bound)
        }
    };
    let mut rows = Vec::with_capacity(lambdas.len());
    for lambda in &lambdas {
        match table_value(&args.kind, lambda, args) {
            Ok(v) => rows.push((lambda.to_string(), v)),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_CONFIG_ERROR;
            }
        }
    }
    let content = if args.format == "json" {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|(l, v)| serde_json::json!({ "lambda": l, "value": v }))
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&items).unwrap())
    } else {
        let mut s = String::from("lambda,value\n");
        for (l, v) in &rows {
            s.push_str(&format!("\"{l}\",{v}\n"));
        }
        s
    };
    if let Err(e) = write_output(&args.out, &content) {
        eprintln!("error: cannot write table: {e}");
        return EXIT_CONFIG_ERROR;
    }
    EXIT_OK
}

pub fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::List => cmd_list(),
        Command::Verify(args) => cmd_verify(&args),
        Command::Sample(args) => cmd_sample(&args),
        Command::Table(args) => cmd_table(&args),
    }
}
