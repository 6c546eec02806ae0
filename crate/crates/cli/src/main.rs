//! `blab`: run verification suites and write JSON reports.

mod cache;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use blab_core::experiments::{
    describe_check, run_suite, suite_ids, CheckResult, ExperimentError, ExperimentSpec, Fault,
    CHECKS, DEFAULT_BUDGET, SUITES,
};
use blab_core::scalars::{FieldSpec, DEFAULT_PRIMES};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cache::Cache;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "blab", version, about = "Exact verification suites for Brauer algebras on symplectic tensor space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a suite and write a JSON report.
    Verify(VerifyArgs),
    /// List the available suites.
    ListSuites,
    /// Describe a check id.
    Show {
        #[arg(long)]
        check: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FaultArg {
    WrongDelta,
}

#[derive(Parser, Debug)]
struct VerifyArgs {
    /// Suite id, or `all`.
    #[arg(long)]
    suite: String,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    f: Option<usize>,
    /// Comma-separated fields such as `q,fp2,fp3` (default: q plus the
    /// primes in BLAB_PRIMES, else q,fp2,fp3,fp5,fp7).
    #[arg(long, value_delimiter = ',')]
    fields: Option<Vec<FieldSpec>>,
    /// Report path (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Upper bound on (2m)^n.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// JSON-lines result cache.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Serialize)]
struct Summary {
    passed: usize,
    failed: usize,
}

#[derive(Serialize)]
struct Report {
    version: &'static str,
    config: Value,
    results: Vec<CheckResult>,
    summary: Summary,
}

enum Failure {
    Usage(String),
    Internal(String),
}

fn primes_from_env() -> Result<Vec<u64>, Failure> {
    match std::env::var("BLAB_PRIMES") {
        Ok(s) if !s.trim().is_empty() => s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("BLAB_PRIMES: '{p}' is not an integer")))
            })
            .collect(),
        _ => Ok(DEFAULT_PRIMES.to_vec()),
    }
}

fn build_spec(args: &VerifyArgs) -> Result<ExperimentSpec, Failure> {
    let fields = match &args.fields {
        Some(fs) => fs.clone(),
        None => FieldSpec::all_with_primes(&primes_from_env()?)
            .map_err(|e| Failure::Usage(format!("BLAB_PRIMES: {e}")))?,
    };
    let mut spec = ExperimentSpec::new(&args.suite, args.m, args.n, fields);
    spec.f = args.f;
    spec.budget = args.budget;
    spec.fault = args.inject_fault.map(|FaultArg::WrongDelta| Fault::WrongDelta);
    if args.suite != "all" && !suite_ids().contains(&args.suite.as_str()) {
        return Err(Failure::Usage(format!("unknown suite '{}'; see `blab list-suites`", args.suite)));
    }
    spec.validate().map_err(classify)?;
    Ok(spec)
}

fn classify(e: ExperimentError) -> Failure {
    match e {
        ExperimentError::Budget { .. } | ExperimentError::Invalid(_) | ExperimentError::UnknownSuite(_) => {
            Failure::Usage(e.to_string())
        }
        other => Failure::Internal(other.to_string()),
    }
}

fn config_json(spec: &ExperimentSpec) -> Value {
    let mut c = json!({
        "suite": spec.suite,
        "m": spec.m,
        "n": spec.n,
        "f": spec.f,
        "fields": spec.fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "budget": spec.budget,
    });
    if let Some(fault) = spec.fault {
        c["fault"] = json!(fault);
    }
    c
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let spec = build_spec(args)?;
    let mut cache = match &args.cache {
        Some(p) => Some(Cache::open(p).map_err(|e| Failure::Internal(format!("cannot read cache {}: {e}", p.display())))?),
        None => None,
    };
    let ids: Vec<&str> = if spec.suite == "all" { suite_ids() } else { vec![spec.suite.as_str()] };
    let mut results = Vec::new();
    for id in ids {
        let mut sub = spec.clone();
        sub.suite = id.to_string();
        let hit = cache.as_ref().and_then(|c| c.get(&sub));
        let rs = match hit {
            Some(rs) => rs,
            None => {
                let rs = run_suite(&sub).map_err(classify)?;
                if let Some(c) = cache.as_mut() {
                    c.put(&sub, &rs)
                        .map_err(|e| Failure::Internal(format!("cannot write cache {}: {e}", c.path().display())))?;
                }
                rs
            }
        };
        results.extend(rs);
    }
    results.sort_by(|a, b| a.check.cmp(&b.check));
    let passed = results.iter().filter(|r| r.pass).count();
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        config: config_json(&spec),
        summary: Summary {
            passed,
            failed: results.len() - passed,
        },
        results,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
    text.push('\n');
    match &args.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Internal(format!("cannot write report {}: {e}", p.display())))?,
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(format!("cannot write report to stdout: {e}")))?,
    }
    Ok(report.summary.failed == 0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::ListSuites => {
            for (id, desc) in SUITES {
                println!("{id:<20}{desc}");
            }
            println!("{:<20}every suite above", "all");
            ExitCode::SUCCESS
        }
        Command::Show { check } => match describe_check(&check) {
            Some(desc) => {
                println!("{check}: {desc}");
                ExitCode::SUCCESS
            }
            None => {
                let known: Vec<&str> = CHECKS.iter().map(|(c, _)| *c).collect();
                eprintln!("error: unknown check '{check}'; known checks: {}", known.join(", "));
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Verify(args) => match verify(&args) {
            Ok(true) => ExitCode::SUCCESS,
            Ok(false) => ExitCode::from(EXIT_FAIL),
            Err(Failure::Usage(msg)) => {
                eprintln!("error: {msg}");
                ExitCode::from(EXIT_USAGE)
            }
            Err(Failure::Internal(msg)) => {
                eprintln!("internal error: {msg}");
                ExitCode::from(EXIT_INTERNAL)
            }
        },
    }
}
