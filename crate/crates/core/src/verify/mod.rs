//! Named identity checks over catalog or user algebras, collected into
//! suites with structured, reproducible reports.

mod checks;
mod eval;
mod report;


pub use eval::evaluate;
pub use report::{CheckResult, Counts, Evaluation, Report, Status, REPORT_VERSION};

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::DEFAULT_FUEL;
use crate::spec::{catalog_families, catalog_load, AlgebraSpec, Mode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    LieJacobi,
    Cojacobi,
    Cocycle,
    PoissonJacobi,
    Leibniz,
    HopfHomomorphism,
    Coassociativity,
    Counit,
    CasimirCentrality,
    FirstOrderDelta,
    QuantumJacobi,
    QuantumCasimir,
    CasimirFormsEqual,
    HbarLimitBrackets,
    HbarLimitCoproduct,
    HbarLimitCasimir,
    Z0Limit,
    Serre,
    QuantumSerre,
    Reabsorption,
    LimitNoncommutation,
    ConfluenceProbe,
}

impl CheckKind {
    pub const ALL: [CheckKind; 22] = [
        CheckKind::LieJacobi,
        CheckKind::Cojacobi,
        CheckKind::Cocycle,
        CheckKind::PoissonJacobi,
        CheckKind::Leibniz,
        CheckKind::HopfHomomorphism,
        CheckKind::Coassociativity,
        CheckKind::Counit,
        CheckKind::CasimirCentrality,
        CheckKind::FirstOrderDelta,
        CheckKind::QuantumJacobi,
        CheckKind::QuantumCasimir,
        CheckKind::CasimirFormsEqual,
        CheckKind::HbarLimitBrackets,
        CheckKind::HbarLimitCoproduct,
        CheckKind::HbarLimitCasimir,
        CheckKind::Z0Limit,
        CheckKind::Serre,
        CheckKind::QuantumSerre,
        CheckKind::Reabsorption,
        CheckKind::LimitNoncommutation,
        CheckKind::ConfluenceProbe,
    ];

    /// The comparisons between the quantum, Poisson and classical levels.
    pub const LIMITS: [CheckKind; 4] = [
        CheckKind::HbarLimitBrackets,
        CheckKind::HbarLimitCoproduct,
        CheckKind::HbarLimitCasimir,
        CheckKind::Z0Limit,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckKind::LieJacobi => "lie-jacobi",
            CheckKind::Cojacobi => "cojacobi",
            CheckKind::Cocycle => "cocycle",
            CheckKind::PoissonJacobi => "poisson-jacobi",
            CheckKind::Leibniz => "leibniz",
            CheckKind::HopfHomomorphism => "hopf-homomorphism",
            CheckKind::Coassociativity => "coassociativity",
            CheckKind::Counit => "counit",
            CheckKind::CasimirCentrality => "casimir-centrality",
            CheckKind::FirstOrderDelta => "first-order-delta",
            CheckKind::QuantumJacobi => "quantum-jacobi",
            CheckKind::QuantumCasimir => "quantum-casimir",
            CheckKind::CasimirFormsEqual => "casimir-forms-equal",
            CheckKind::HbarLimitBrackets => "hbar-limit-brackets",
            CheckKind::HbarLimitCoproduct => "hbar-limit-coproduct",
            CheckKind::HbarLimitCasimir => "hbar-limit-casimir",
            CheckKind::Z0Limit => "z0-limit",
            CheckKind::Serre => "serre",
            CheckKind::QuantumSerre => "quantum-serre",
            CheckKind::Reabsorption => "reabsorption",
            CheckKind::LimitNoncommutation => "limit-noncommutation",
            CheckKind::ConfluenceProbe => "confluence-probe",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        CheckKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown check `{}`", s))
    }
}

/// Named check collections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Every check except the heavy ones.
    Default,
    /// Every check.
    Full,
    /// Only the limit comparisons.
    Limits,
}

impl Suite {
    pub fn kinds(self) -> Vec<CheckKind> {
        match self {
            Suite::Default | Suite::Full => CheckKind::ALL.to_vec(),
            Suite::Limits => CheckKind::LIMITS.to_vec(),
        }
    }

    pub fn includes_heavy(self) -> bool {
        self == Suite::Full
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Default => "default",
            Suite::Full => "full",
            Suite::Limits => "limits",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "default" => Ok(Suite::Default),
            "full" => Ok(Suite::Full),
            "limits" => Ok(Suite::Limits),
            _ => Err(format!("unknown suite `{}` (expected default, full or limits)", s)),
        }
    }
}

/// The algebra a suite runs on: a quantum description, a Poisson one, or
/// both (for the limit checks).
#[derive(Clone, Debug)]
pub struct Target {
    pub name: String,
    pub quantum: Option<AlgebraSpec>,
    pub poisson: Option<AlgebraSpec>,
}

impl Target {
    /// `family` selects both modes; `family_quantum` or `family_poisson`
    /// selects one.
    pub fn catalog(name: &str) -> Result<Target> {
        if catalog_families().contains(&name) {
            return Target::pair(
                name,
                Some(catalog_load(name, Mode::Quantum)?),
                Some(catalog_load(name, Mode::Poisson)?),
            );
        }
        for mode in [Mode::Quantum, Mode::Poisson] {
            if let Some(family) = name.strip_suffix(&format!("_{}", mode)) {
                let spec = catalog_load(family, mode)?;
                return Ok(Target::single(spec));
            }
        }
        Err(Error::UnknownCatalogEntry(name.to_string()))
    }

    pub fn single(spec: AlgebraSpec) -> Target {
        let name = format!("{}_{}", spec.name, spec.mode);
        match spec.mode {
            Mode::Quantum => Target {
                name,
                quantum: Some(spec),
                poisson: None,
            },
            Mode::Poisson => Target {
                name,
                quantum: None,
                poisson: Some(spec),
            },
        }
    }

    /// Both descriptions of one algebra; their generators must agree.
    pub fn pair(name: &str, quantum: Option<AlgebraSpec>, poisson: Option<AlgebraSpec>) -> Result<Target> {
        if let (Some(q), Some(p)) = (&quantum, &poisson) {
            let names = |s: &AlgebraSpec| s.generators.iter().map(|g| g.name.clone()).collect::<Vec<_>>();
            if q.mode != Mode::Quantum || p.mode != Mode::Poisson {
                return Err(Error::InvalidSpec("expected one quantum and one poisson description".to_string()));
            }
            if names(q) != names(p) || q.layout != p.layout {
                return Err(Error::InvalidSpec(format!(
                    "`{}` and `{}` declare different generators",
                    q.name, p.name
                )));
            }
        }
        Ok(Target {
            name: name.to_string(),
            quantum,
            poisson,
        })
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    /// Rule applications allowed per normalization.
    pub fuel: u64,
    pub include_heavy: bool,
    /// Random seeds per word in the confluence probe.
    pub probe_seeds: u64,
    /// Worker threads; 0 uses the global pool.
    pub parallelism: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            fuel: DEFAULT_FUEL,
            include_heavy: false,
            probe_seeds: 2,
            parallelism: 0,
        }
    }
}

/// What a single subject evaluation produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Pass,
    Fail(String),
    Warning(String),
}

pub(crate) type Job<'a> = Box<dyn Fn() -> Outcome + Send + Sync + 'a>;

pub(crate) struct Task<'a> {
    pub kind: CheckKind,
    pub algebra: String,
    pub subject: String,
    pub heavy: bool,
    pub job: Job<'a>,
}

fn execute(task: &Task<'_>) -> CheckResult {
    let start = Instant::now();
    let outcome = (task.job)();
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (status, witness) = match outcome {
        Outcome::Pass => (Status::Pass, None),
        Outcome::Fail(w) => (Status::Fail, Some(w)),
        Outcome::Warning(w) => (Status::Warning, Some(w)),
    };
    CheckResult {
        kind: task.kind,
        algebra: task.algebra.clone(),
        subject: task.subject.clone(),
        status,
        witness,
        heavy: task.heavy,
        elapsed_ms,
    }
}

fn run_tasks(tasks: &[Task<'_>], parallelism: usize) -> Vec<CheckResult> {
    let go = || tasks.par_iter().map(execute).collect::<Vec<_>>();
    if parallelism == 0 {
        return go();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(parallelism).build() {
        Ok(pool) => pool.install(go),
        Err(_) => go(),
    }
}

/// Every subject of one check kind. Kinds that do not apply to the target
/// (for example quantum checks on a Poisson-only target) yield nothing.
pub fn run_check(kind: CheckKind, target: &Target, options: &Options) -> Vec<CheckResult> {
    let tasks: Vec<Task<'_>> = checks::tasks(kind, target, options)
        .into_iter()
        .filter(|t| options.include_heavy || !t.heavy)
        .collect();
    run_tasks(&tasks, options.parallelism)
}

/// Runs `kinds` on `target`. Results are ordered by kind, then subject
/// enumeration order, independent of scheduling.
pub fn run_suite(target: &Target, kinds: &[CheckKind], options: &Options) -> Report {
    let tasks: Vec<Task<'_>> = kinds
        .iter()
        .flat_map(|&k| checks::tasks(k, target, options))
        .filter(|t| options.include_heavy || !t.heavy)
        .collect();
    let results = run_tasks(&tasks, options.parallelism);
    Report::new(&target.name, results)
}
