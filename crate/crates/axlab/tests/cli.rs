use std::process::{Command, Output};

use serde_json::Value;

fn axlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_axlab")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn find_model_prints_a_model() {
    let out = axlab(&["--format", "json", "find-model", "--system", "huntington", "--pattern", "-++-+", "--size", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["model"]["n"], 2);
    assert!(!v["model"]["rels"]["sb"].as_array().unwrap().is_empty());
}

#[test]
fn min_model_reports_size_and_refuted_sizes() {
    let out = axlab(&["--format", "json", "min-model", "--system", "huntington", "--pattern", "++-++"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["size"], 3);
    assert_eq!(v["refuted"], serde_json::json!([1, 2]));
    assert_eq!(v["pattern"], "++-++");
}

#[test]
fn derive_exit_codes_follow_the_verdict() {
    let base = ["derive", "--premises", "huntington,def.weak_from_strict", "--goal", "mcphee.2"];
    assert_eq!(axlab(&base).status.code(), Some(0));
    let out = axlab(&[&base[..], &["--without", "huntington.D"]].concat());
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("countermodel"));
}

#[test]
fn usage_errors_exit_two_with_one_line() {
    let out = axlab(&["find-model", "--system", "huntington", "--pattern", "++", "--size", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(err.trim_end().lines().count(), 1);
    assert_eq!(axlab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn needed_lists_every_premise() {
    let out = axlab(&["--format", "json", "needed", "--premises", "huntington_prime,def.weak_from_strict", "--goal", "mcphee.6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out).as_array().unwrap().len(), 5);
}

#[test]
fn export_writes_a_tptp_problem() {
    let out = axlab(&["export-tptp", "--premises", "mcphee1", "--goal", "huntington.A"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("fof(") && l.contains("conjecture")));
}

#[test]
fn reproduce_output_is_deterministic_unless_timed() {
    let run = |jobs: &str| axlab(&["--format", "json", "--jobs", jobs, "reproduce", "separation"]);
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert!(json(&one).get("elapsed_ms").is_none());
    let timed = axlab(&["--format", "json", "reproduce", "separation", "--timing"]);
    assert!(json(&timed)["elapsed_ms"].is_u64());
}

#[test]
fn independence_csv_has_one_row_per_pattern() {
    let out = axlab(&["--format", "csv", "independence", "--system", "huntington", "--cap", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 33);
}
