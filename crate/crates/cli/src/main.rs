//! Command-line front end: catalog listing, verification suites, limit
//! comparisons, expression evaluation and spec validation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qpoisson::spec::{catalog_entries, validate_spec};
use qpoisson::verify::{evaluate, run_suite, CheckKind, Options, Report, Suite, Target};
use qpoisson::{AlgebraSpec, Error};
use serde::Serialize;

/// Exact verification of two-parameter quantum algebras and their
/// q-Poisson-Hopf limits.
#[derive(Parser, Debug)]
#[command(name = "qpoisson", version)]
struct Cli {
    /// Rule applications allowed per normalization.
    #[arg(long, global = true, env = "QPOISSON_FUEL", default_value_t = qpoisson::quantum::DEFAULT_FUEL)]
    fuel: u64,

    /// Worker threads for the checks (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Zero every timing field, for byte-stable output.
    #[arg(long, global = true)]
    no_timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalog algebras.
    List,
    /// Run a check suite on an algebra.
    Verify {
        /// Catalog family (`su3`), one description (`su3_quantum`) or a
        /// path to a definition file.
        algebra: String,
        /// `default` skips the heavy checks, `full` runs everything.
        #[arg(long, default_value = "default")]
        suite: String,
        /// Run only these checks (repeatable).
        #[arg(long = "check", value_name = "KIND")]
        checks: Vec<String>,
        /// Random seeds per word for the confluence probe.
        #[arg(long, default_value_t = 2)]
        seeds: u64,
    },
    /// Compare the hbar -> 0 and z -> 0 limits with the catalog tables.
    Limits {
        /// Catalog family, or a path to a definition file.
        algebra: String,
    },
    /// Normalize, bracket or coproduct the expressions of a file, one per
    /// line. A family name selects its quantum description.
    Eval {
        algebra: String,
        expr_file: PathBuf,
    },
    /// Parse and validate a definition file.
    Validate { file: PathBuf },
}

/// A user-facing failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {}", path.display(), e)))
}

fn looks_like_path(s: &str) -> bool {
    s.ends_with(".alg") || s.contains('/') || Path::new(s).is_file()
}

fn target(selector: &str) -> Result<Target, Failure> {
    if looks_like_path(selector) {
        let spec = AlgebraSpec::parse(&read(Path::new(selector))?)?;
        return Ok(Target::single(spec));
    }
    Ok(Target::catalog(selector)?)
}

fn single_spec(selector: &str) -> Result<AlgebraSpec, Failure> {
    let t = target(selector)?;
    Ok(t.quantum.or(t.poisson).expect("a target has at least one description"))
}

fn options(cli: &Cli, include_heavy: bool, probe_seeds: u64) -> Options {
    Options {
        fuel: cli.fuel,
        include_heavy,
        probe_seeds,
        parallelism: cli.jobs,
    }
}

#[derive(Serialize)]
struct Listing {
    version: u32,
    command: &'static str,
    entries: Vec<ListEntry>,
}

#[derive(Serialize)]
struct ListEntry {
    family: &'static str,
    mode: &'static str,
    generators: Vec<String>,
}

fn list(cli: &Cli) -> Result<(String, bool), Failure> {
    let mut entries = Vec::new();
    for e in catalog_entries() {
        let spec = qpoisson::spec::catalog_load(e.family, e.mode)?;
        entries.push(ListEntry {
            family: e.family,
            mode: e.mode.as_str(),
            generators: spec.generators.iter().map(|g| g.name.clone()).collect(),
        });
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&Listing {
            version: qpoisson::verify::REPORT_VERSION,
            command: "list",
            entries,
        })
        .expect("listing serializes")
            + "\n",
        Format::Text => {
            let mut out = String::new();
            for e in &entries {
                out.push_str(&format!("{:<18} {:<8} {}\n", e.family, e.mode, e.generators.join(" ")));
            }
            out
        }
    };
    Ok((text, true))
}

fn emit(cli: &Cli, report: Report) -> (String, bool) {
    let report = if cli.no_timings { report.without_timings() } else { report };
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.render_text(),
    };
    (text, report.passed())
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::List => list(cli),
        Command::Verify {
            algebra,
            suite,
            checks,
            seeds,
        } => {
            let suite: Suite = suite.parse().map_err(Failure::usage)?;
            let kinds: Vec<CheckKind> = if checks.is_empty() {
                suite.kinds()
            } else {
                checks
                    .iter()
                    .map(|c| c.parse::<CheckKind>())
                    .collect::<Result<_, _>>()
                    .map_err(Failure::usage)?
            };
            let t = target(algebra)?;
            let report = run_suite(&t, &kinds, &options(cli, suite.includes_heavy(), *seeds));
            Ok(emit(cli, report))
        }
        Command::Limits { algebra } => {
            let t = target(algebra)?;
            let report = run_suite(&t, &Suite::Limits.kinds(), &options(cli, false, 0)).with_command("limits");
            Ok(emit(cli, report))
        }
        Command::Eval { algebra, expr_file } => {
            let spec = single_spec(algebra)?;
            let source = read(expr_file)?;
            let name = format!("{}_{}", spec.name, spec.mode);
            let report = Report::from_evaluations(&name, evaluate(&spec, &source, cli.fuel));
            Ok(emit(cli, report))
        }
        Command::Validate { file } => {
            let spec = AlgebraSpec::parse(&read(file)?)?;
            let name = format!("{}_{}", spec.name, spec.mode);
            Ok(emit(cli, Report::from_violations(&name, validate_spec(&spec))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, passed) = match run(&cli) {
        Ok(r) => r,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {}", path.display(), e);
                return ExitCode::from(2);
            }
        }
        None => print!("{}", text),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

