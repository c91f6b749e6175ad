//! Command-line verification harness.
//!
//! Exit codes: 0 when every record of every requested suite passes, 1 when
//! any verification record fails, 2 for usage, configuration, or I/O
//! problems.

use hypermeans_cli::config::ExperimentConfig;
use hypermeans_cli::report::{csv_body, to_csv, to_json, SuiteReport};
use hypermeans_cli::{run_all, suites, HarnessError};
use std::path::PathBuf;
use std::process::ExitCode;

const USAGE: &str = "\
usage: hypermeans <suite> [options]

suites:
  sufficiency   vanishing means of kernel-family elements by quadrature
  necessity     SVD null-space scan of the mean map over a Laurent dictionary
  algebra       exact ladder-operator identities and the eigen-shift constant
  darboux       radial/ambient intertwining residuals
  ode           radial ODE residuals of mean profiles
  decay         decay-rate fits of kernel members
  support       support-radius detector (bump and counterexample)
  all           every suite above

options:
  --config <path>    key-value configuration file (defaults built in)
  --out <dir>        report directory (default: reports)
  --format csv|json  report format (default: csv)
  --seed <u64>       override the configured random seed
  --quiet            suppress progress output
";

struct Args {
    suite: String,
    config: Option<PathBuf>,
    out: PathBuf,
    format: Format,
    seed: Option<u64>,
    quiet: bool,
}

#[derive(Clone, Copy, PartialEq)]
enum Format {
    Csv,
    Json,
}

fn parse_args() -> Result<Args, String> {
    let mut argv = std::env::args().skip(1);
    let suite = argv.next().ok_or("missing suite name")?;
    let known = [
        "sufficiency",
        "necessity",
        "algebra",
        "darboux",
        "ode",
        "decay",
        "support",
        "all",
    ];
    if !known.contains(&suite.as_str()) {
        return Err(format!("unknown suite `{suite}`"));
    }
    let mut args = Args {
        suite,
        config: None,
        out: PathBuf::from("reports"),
        format: Format::Csv,
        seed: None,
        quiet: false,
    };
    while let Some(flag) = argv.next() {
        match flag.as_str() {
            "--config" => {
                args.config = Some(PathBuf::from(
                    argv.next().ok_or("--config requires a path")?,
                ))
            }
            "--out" => args.out = PathBuf::from(argv.next().ok_or("--out requires a directory")?),
            "--format" => {
                let v = argv.next().ok_or("--format requires csv or json")?;
                args.format = match v.as_str() {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    other => return Err(format!("unknown format `{other}`")),
                };
            }
            "--seed" => {
                let v = argv.next().ok_or("--seed requires an integer")?;
                args.seed = Some(v.parse().map_err(|_| format!("invalid seed `{v}`"))?);
            }
            "--quiet" => args.quiet = true,
            other => return Err(format!("unknown option `{other}`")),
        }
    }
    Ok(args)
}

fn run_suite(name: &str, cfg: &ExperimentConfig) -> Result<Vec<SuiteReport>, HarnessError> {
    Ok(match name {
        "sufficiency" => vec![suites::sufficiency::run(cfg)?],
        "necessity" => vec![suites::necessity::run(cfg)?],
        "algebra" => vec![suites::algebra::run(cfg)?],
        "darboux" => vec![suites::darboux::run(cfg)?],
        "ode" => vec![suites::ode::run(cfg)?],
        "decay" => vec![suites::decay::run(cfg)?],
        "support" => vec![suites::support::run(cfg)?],
        "all" => run_all(cfg)?,
        _ => unreachable!("suite names validated at parse time"),
    })
}

fn main() -> ExitCode {
    let args = match parse_args() {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    let mut cfg = match &args.config {
        Some(path) => match ExperimentConfig::from_file(path) {
            Ok(cfg) => cfg,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let suites = match run_suite(&args.suite, &cfg) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    if let Err(e) = std::fs::create_dir_all(&args.out) {
        eprintln!("error: cannot create {}: {e}", args.out.display());
        return ExitCode::from(2);
    }
    let (file_name, contents) = match args.format {
        Format::Csv => (format!("{}.csv", args.suite), to_csv(&cfg, &suites)),
        Format::Json => (format!("{}.json", args.suite), to_json(&cfg, &suites)),
    };
    let path = args.out.join(file_name);
    if let Err(e) = std::fs::write(&path, &contents) {
        eprintln!("error: cannot write {}: {e}", path.display());
        return ExitCode::from(2);
    }

    let mut all_pass = true;
    for suite in &suites {
        all_pass &= suite.all_passed();
        if !args.quiet {
            println!(
                "suite {}: {}/{} passed{}",
                suite.suite,
                suite.summary.passed,
                suite.summary.total,
                if suite.all_passed() { "" } else { "  <-- FAIL" }
            );
            for r in suite.records.iter().filter(|r| !r.pass) {
                println!(
                    "  FAIL {} (n={}, k={:?}, j={:?}, i={:?}): value {} vs tolerance {}",
                    r.experiment, r.n, r.k, r.j, r.i, r.value, r.tolerance
                );
            }
        }
    }
    if !args.quiet {
        println!(
            "report written to {} ({} bytes of body)",
            path.display(),
            csv_body(&contents).len()
        );
        println!("RESULT: {}", if all_pass { "PASS" } else { "FAIL" });
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
