use std::path::PathBuf;
use std::process::{Command, Output};

use qpoisson::spec::catalog_source;
use qpoisson::Mode;

fn qpoisson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qpoisson"))
        .args(args)
        .env_remove("QPOISSON_FUEL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{}: {}", e, stdout(o)))
}

#[test]
fn help_matches_golden() {
    let o = qpoisson(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let golden = include_str!("golden/help.txt");
    assert_eq!(stdout(&o), golden);
    for cmd in ["list", "verify", "limits", "eval", "validate"] {
        assert!(golden.contains(&format!("\n  {} ", cmd)), "{}", cmd);
    }
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = qpoisson(&["verify", "su3", "--bogus"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qpoisson(&["verify", "su3", "--check", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown check"));
    let o = qpoisson(&["verify", "so5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn list_prints_the_catalog() {
    let o = qpoisson(&["list"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("su3") && text.contains("su2_nonstandard"));
    let v = json(&qpoisson(&["list", "--format", "json"]));
    assert_eq!(v["entries"].as_array().unwrap().len(), 6);
    assert_eq!(v["entries"][4]["generators"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_passing_family() {
    let o = qpoisson(&["verify", "su2_nonstandard"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("-> PASS"));
}

#[test]
fn verify_su3_reports_only_the_quantum_jacobi_failures() {
    let o = qpoisson(&["verify", "su3", "--suite", "default", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["command"], "verify");
    let results = v["results"].as_array().unwrap();
    let failing: Vec<&serde_json::Value> = results.iter().filter(|r| r["status"] == "fail").collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|r| r["kind"] == "quantum-jacobi"));
    assert!(results.iter().all(|r| r["heavy"] == false));
}

#[test]
fn structured_output_is_deterministic() {
    let args = ["verify", "su3_poisson", "--format", "json", "--no-timings"];
    let a = qpoisson(&args);
    let b = qpoisson(&[&args[..], &["--jobs", "2"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selected_checks_only() {
    let v = json(&qpoisson(&[
        "verify",
        "su3",
        "--check",
        "serre",
        "--check",
        "quantum-serre",
        "--format",
        "json",
    ]));
    let kinds: Vec<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    assert_eq!(kinds.len(), 8);
    assert!(kinds.iter().all(|k| *k == "serre" || *k == "quantum-serre"));
}

#[test]
fn limits_recovers_the_nonstandard_poisson_tables() {
    let o = qpoisson(&["limits", "su2_nonstandard", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["command"], "limits");
    let kinds: std::collections::BTreeSet<&str> = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["kind"].as_str().unwrap())
        .collect();
    let expected: std::collections::BTreeSet<&str> =
        ["hbar-limit-brackets", "hbar-limit-coproduct", "hbar-limit-casimir", "z0-limit"].into();
    assert_eq!(kinds, expected);
}

#[test]
fn validate_missing_pair_exits_2() {
    let src = catalog_source("su2_standard", Mode::Poisson).unwrap();
    let broken = src.replace("  {F12, F21} = sinh(2*z*H)/z\n", "");
    assert_ne!(broken, src);
    let path = scratch("broken.alg", &broken);
    let o = qpoisson(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(F12, F21)"), "{}", stderr(&o));
}

#[test]
fn validate_reports_violations() {
    let src = catalog_source("su2_standard", Mode::Poisson).unwrap();
    let ok = scratch("ok.alg", src);
    let o = qpoisson(&["validate", ok.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let src = catalog_source("su2_standard", Mode::Quantum).unwrap();
    let bad = scratch("no-rule.alg", &src.replace("  F21 : shift\n", ""));
    let o = qpoisson(&["validate", bad.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["command"], "validate");
    assert_eq!(v["violations"][0]["kind"], "reorder-coverage");
}

#[test]
fn verify_accepts_a_definition_file() {
    let src = catalog_source("su2_standard", Mode::Poisson).unwrap();
    let flipped = scratch("flipped.alg", &src.replace("{H, F12} = F12", "{H, F12} = -F12"));
    let o = qpoisson(&["verify", flipped.to_str().unwrap(), "--check", "poisson-jacobi"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("(H, F12, F21)"));
}

#[test]
fn eval_expression_file() {
    let exprs = scratch("exprs.txt", "# su2\nF21*F12\n[H, F12]\ncoproduct(F12)\n");
    let o = qpoisson(&["eval", "su2_standard", exprs.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&o);
    assert_eq!(v["command"], "eval");
    let ev = v["evaluations"].as_array().unwrap();
    assert_eq!(ev.len(), 3);
    assert_eq!(ev[1]["operation"], "bracket");
    assert_eq!(ev[1]["value"], "hbar*F12");
    assert_eq!(ev[2]["operation"], "coproduct");

    let bad = scratch("bad.txt", "F12 +\n");
    let o = qpoisson(&["eval", "su2_standard", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_file_and_fuel_env() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests-report.json");
    let o = qpoisson(&["verify", "su2_standard_poisson", "--format", "json", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["version"], 1);

    let o = Command::new(env!("CARGO_BIN_EXE_qpoisson"))
        .args(["verify", "su3_quantum", "--check", "quantum-jacobi"])
        .env("QPOISSON_FUEL", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("fuel"), "{}", stdout(&o));
}
