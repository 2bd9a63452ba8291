//! `beurling`: run instance specs and the acceptance suite from the shell.
//!
//! Exit codes: 0 all checks pass, 1 usage or parse error, 2 some check
//! returned FAIL (or TRUNCATION_LIMITED) with everything consistent,
//! 3 integrity error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use beurling_core::acceptance;
use beurling_core::beurling::Mode;
use beurling_core::instance::{run_instance, InstanceError, InstanceSpec, Status};
use beurling_core::Tolerances;
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_PASS: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_FAILURES: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "beurling", version, about = "Beurling criterion checks on truncated valuation Hilbert modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Float,
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Float => Mode::Float,
            ModeArg::Exact => Mode::Exact,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the checks listed in a JSON instance spec.
    ///
    /// Coordinates are centred at the origin; translate a basepoint `a` by
    /// substituting `z -> z + a` in the generators before writing the spec.
    Run {
        spec: PathBuf,
        /// Overrides the spec's mode.
        #[arg(long, env = "BEURLING_MODE", value_enum)]
        mode: Option<ModeArg>,
        /// Sets every float tolerance to this value.
        #[arg(long, env = "BEURLING_TOL")]
        tol: Option<f64>,
        #[arg(long, env = "BEURLING_OUT_DIR", default_value = ".")]
        out_dir: PathBuf,
        /// Overrides the spec's seed.
        #[arg(long, env = "BEURLING_SEED")]
        seed: Option<u64>,
    },
    /// Run the acceptance suite, one line per criterion.
    Selftest {
        #[arg(long, env = "BEURLING_TOL")]
        tol: Option<f64>,
        /// Run a single criterion (1 to 10).
        #[arg(long)]
        only: Option<u32>,
        /// Also write the results as JSON here.
        #[arg(long, env = "BEURLING_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Instance(#[from] InstanceError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid tolerance {0}: must be positive and finite")]
    Tolerance(f64),
    #[error("no criterion {0}; criteria are numbered 1 to 10")]
    Criterion(u32),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Instance(e) if e.is_integrity() => EXIT_INTEGRITY,
            _ => EXIT_USAGE,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn tolerances(tol: Option<f64>) -> Result<Option<Tolerances>, CliError> {
    match tol {
        None => Ok(None),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Some(Tolerances::uniform(t))),
        Some(t) => Err(CliError::Tolerance(t)),
    }
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> Result<(), CliError> {
    let target = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    file.write_all(contents).map_err(io_err(&tmp))?;
    file.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, &target).map_err(io_err(&target))
}

fn run(spec_path: &Path, mode: Option<ModeArg>, tol: Option<f64>, out_dir: &Path, seed: Option<u64>) -> Result<u8, CliError> {
    let text = fs::read_to_string(spec_path).map_err(io_err(spec_path))?;
    let mut spec = InstanceSpec::from_json(&text)?;
    if let Some(m) = mode {
        spec.mode = m.into();
    }
    if let Some(s) = seed {
        spec.seed = s;
    }
    let tol = tolerances(tol)?;
    let out = run_instance(&spec, tol)?;

    fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;
    let mut json = serde_json::to_vec_pretty(&out.report)?;
    json.push(b'\n');
    write_atomic(out_dir, "report.json", &json)?;
    for (name, content) in &out.csv {
        write_atomic(out_dir, name, content.as_bytes())?;
    }

    let r = &out.report;
    if let Some(b) = &r.beurling {
        println!(
            "invariant {:?}, r1_inner {:?}, full_projection {:?}, consistent {}",
            b.invariant.verdict, b.r1_inner.verdict, b.full_projection.verdict, b.consistent
        );
    }
    for e in &r.errors {
        eprintln!("error: {e}");
    }
    println!("status {:?}; report written to {}", r.status, out_dir.join("report.json").display());
    Ok(match r.status {
        Status::AllPass => EXIT_PASS,
        Status::Failures => EXIT_FAILURES,
        Status::Integrity => EXIT_INTEGRITY,
    })
}

fn selftest(tol: Option<f64>, only: Option<u32>, out_dir: Option<&Path>) -> Result<u8, CliError> {
    let tol = tolerances(tol)?.unwrap_or_default();
    let results = match only {
        Some(id) => vec![acceptance::run_criterion(id, &tol).ok_or(CliError::Criterion(id))?],
        None => {
            let mut all = Vec::new();
            for (id, _) in acceptance::CRITERIA {
                let r = acceptance::run_criterion(id, &tol).expect("listed criterion");
                println!("{r}");
                all.push(r);
            }
            all
        }
    };
    if only.is_some() {
        println!("{}", results[0]);
    }
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
        write_atomic(dir, "selftest.json", &serde_json::to_vec_pretty(&results)?)?;
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    Ok(if results.iter().any(|r| r.integrity) {
        EXIT_INTEGRITY
    } else if failed > 0 {
        EXIT_FAILURES
    } else {
        EXIT_PASS
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS });
        }
    };
    let result = match &cli.command {
        Command::Run { spec, mode, tol, out_dir, seed } => run(spec, *mode, *tol, out_dir, *seed),
        Command::Selftest { tol, only, out_dir } => selftest(*tol, *only, out_dir.as_deref()),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
