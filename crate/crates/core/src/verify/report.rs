use std::fmt::Write as _;

use serde::Serialize;

use super::CheckKind;
use crate::spec::Violation;

/// Bumped whenever a field of the structured report changes meaning.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warning,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Warning => "warning",
        }
    }
}

/// One subject of one check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub kind: CheckKind,
    pub algebra: String,
    pub subject: String,
    pub status: Status,
    /// Canonical rendering of the nonzero residual, or the error raised.
    pub witness: Option<String>,
    pub heavy: bool,
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub warning: usize,
}

/// One line of an expression file and what it evaluated to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub line: usize,
    pub input: String,
    /// `normal-form`, `bracket` or `coproduct`.
    pub operation: &'static str,
    pub value: Option<String>,
    pub error: Option<String>,
}

/// The structured output of every command. Arrays that do not apply to a
/// command are present and empty.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: u32,
    /// `verify`, `limits`, `eval` or `validate`.
    pub command: String,
    pub target: String,
    pub status: Status,
    pub counts: Counts,
    pub results: Vec<CheckResult>,
    pub evaluations: Vec<Evaluation>,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new(target: &str, results: Vec<CheckResult>) -> Report {
        let mut counts = Counts::default();
        for r in &results {
            match r.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Warning => counts.warning += 1,
            }
        }
        Report {
            version: REPORT_VERSION,
            command: "verify".to_string(),
            target: target.to_string(),
            status: if counts.fail == 0 { Status::Pass } else { Status::Fail },
            counts,
            results,
            evaluations: Vec::new(),
            violations: Vec::new(),
        }
    }

    /// A report for `eval`; an evaluation error counts as a failure.
    pub fn from_evaluations(target: &str, evaluations: Vec<Evaluation>) -> Report {
        let fail = evaluations.iter().filter(|e| e.error.is_some()).count();
        let mut out = Report::new(target, Vec::new());
        out.command = "eval".to_string();
        out.counts = Counts {
            pass: evaluations.len() - fail,
            fail,
            warning: 0,
        };
        out.status = if fail == 0 { Status::Pass } else { Status::Fail };
        out.evaluations = evaluations;
        out
    }

    /// A report for `validate`; each violation counts as a failure.
    pub fn from_violations(target: &str, violations: Vec<Violation>) -> Report {
        let mut out = Report::new(target, Vec::new());
        out.command = "validate".to_string();
        out.counts.fail = violations.len();
        out.status = if violations.is_empty() { Status::Pass } else { Status::Fail };
        out.violations = violations;
        out
    }

    pub fn with_command(mut self, command: &str) -> Report {
        self.command = command.to_string();
        self
    }

    /// Warnings do not fail a report.
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Concatenation of several reports under one target name.
    pub fn merge(target: &str, reports: Vec<Report>) -> Report {
        Report::new(target, reports.into_iter().flat_map(|r| r.results).collect())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    /// The same report with every timing field zeroed.
    pub fn without_timings(&self) -> Report {
        let mut out = self.clone();
        for r in &mut out.results {
            r.elapsed_ms = 0.0;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Per-kind summary lines followed by every non-passing subject, then
    /// any evaluations and violations.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.evaluations {
            let _ = writeln!(out, "{}: {} {}", e.line, e.operation, e.input);
            match (&e.value, &e.error) {
                (Some(v), _) => {
                    let _ = writeln!(out, "  = {}", v);
                }
                (None, Some(err)) => {
                    let _ = writeln!(out, "  error: {}", err);
                }
                _ => {}
            }
        }
        for v in &self.violations {
            let _ = writeln!(out, "{}", v);
        }
        let mut groups: Vec<(CheckKind, &str, Counts, f64)> = Vec::new();
        for r in &self.results {
            let idx = match groups.iter().position(|g| g.0 == r.kind && g.1 == r.algebra) {
                Some(i) => i,
                None => {
                    groups.push((r.kind, &r.algebra, Counts::default(), 0.0));
                    groups.len() - 1
                }
            };
            let g = &mut groups[idx];
            match r.status {
                Status::Pass => g.2.pass += 1,
                Status::Fail => g.2.fail += 1,
                Status::Warning => g.2.warning += 1,
            }
            g.3 += r.elapsed_ms;
        }
        for (kind, algebra, c, ms) in &groups {
            let status = if c.fail > 0 {
                "FAIL"
            } else if c.warning > 0 {
                "WARN"
            } else {
                "PASS"
            };
            let _ = write!(out, "{:<4}  {:<22} {:<18} {:>4} pass", status, kind.as_str(), algebra, c.pass);
            if c.fail > 0 {
                let _ = write!(out, ", {} fail", c.fail);
            }
            if c.warning > 0 {
                let _ = write!(out, ", {} warning", c.warning);
            }
            let _ = writeln!(out, "  ({:.1} ms)", ms);
        }
        for r in self.results.iter().filter(|r| r.status != Status::Pass) {
            let _ = writeln!(
                out,
                "\n{} {} [{}] {}:\n  {}",
                r.status.as_str(),
                r.kind,
                r.algebra,
                r.subject,
                r.witness.as_deref().unwrap_or("")
            );
        }
        let _ = writeln!(
            out,
            "\n{}: {} pass, {} fail, {} warning -> {}",
            self.target,
            self.counts.pass,
            self.counts.fail,
            self.counts.warning,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        out
    }
}
