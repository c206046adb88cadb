use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lieconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lieconf"))
        .args(args)
        .output()
        .unwrap()
}

fn build_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let out = lieconf(&[&["build", "--out", &path][..], args].concat());
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    path
}

fn json_report(args: &[&str]) -> (Option<i32>, Value) {
    let out = lieconf(&[args, &["--format", "json"][..]].concat());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    (out.status.code(), v)
}

#[test]
fn build_writes_a_stable_document() {
    let a = lieconf(&["build", "--family", "K", "--n", "2"]);
    let b = lieconf(&["build", "--family", "K", "--n", "2"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["name"], "K2");
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
}

#[test]
fn check_suites_pass_on_built_documents() {
    let dir = tempfile::tempdir().unwrap();
    let w1 = build_to(dir.path(), "w1.json", &["--family", "W", "--n", "1"]);
    let k2 = build_to(dir.path(), "k2.json", &["--family", "K", "--n", "2"]);
    let s2 = build_to(
        dir.path(),
        "s2.json",
        &["--family", "S", "--n", "2", "--a", "-2"],
    );
    for file in [&w1, &k2, &s2] {
        for suite in ["axioms", "family", "modes"] {
            let out = lieconf(&["check", file, "--suite", suite, "--max-mode", "3"]);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{file} {suite}: {}",
                String::from_utf8_lossy(&out.stdout)
            );
        }
    }
    let out = lieconf(&["check", "--in", &w1]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn corrupted_document_fails_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = build_to(dir.path(), "w2.json", &["--family", "W", "--n", "2"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let coeff = &mut v["brackets"][1]["terms"][0]["coeff"];
    let flipped = match coeff.as_str().unwrap() {
        s if s.starts_with('-') => s[1..].to_string(),
        s => format!("-{s}"),
    };
    *coeff = Value::String(flipped);
    std::fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let out = lieconf(&["check", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("none.json");
    assert_eq!(
        lieconf(&["check", missing.to_str().unwrap()]).status.code(),
        Some(2)
    );
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{ not json").unwrap();
    assert_eq!(
        lieconf(&["h2", garbage.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(
        lieconf(&["build", "--family", "S", "--n", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lieconf(&["build", "--family", "S", "--n", "2", "--a", "x"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn k4_is_rejected_with_the_constraint() {
    let out = lieconf(&["build", "--family", "K", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("N ≠ 4"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn catalog_lists_seven_families() {
    let out = lieconf(&["catalog", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = build_to(dir.path(), "k3.json", &["--family", "K", "--n", "3"]);
    let args = ["check", &k3, "--samples", "50", "--seed", "11"];
    let (code, mut a) = json_report(&args);
    let (_, mut b) = json_report(&[&args[..], &["--jobs", "1"][..]].concat());
    assert_eq!(code, Some(0));
    a["timing_ms"] = Value::Null;
    b["timing_ms"] = Value::Null;
    a["command"] = Value::Null;
    b["command"] = Value::Null;
    assert_eq!(a, b);
    assert_eq!(a["seed"], 11);
}

#[test]
fn h2_reports_dimension_and_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let k1 = build_to(dir.path(), "k1.json", &["--family", "K", "--n", "1"]);
    let (code, v) = json_report(&["h2", &k1]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"]["dim H2"], 1);
    assert_eq!(
        v["result"]["runs (extra degree, dim)"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));
}
