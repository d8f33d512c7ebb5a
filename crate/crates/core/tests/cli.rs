use std::process::{Command, Output};

use serde_json::Value;

fn cellred(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellred")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn audit_single_type_emits_one_report() {
    let out = cellred(&["audit", "--type", "B2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["type"], "B2");
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["status"] == "pass" || c["status"] == "skipped"));
    assert!(checks.iter().any(|c| c["id"] == "duality"));
}

#[test]
fn audit_several_types_emits_an_array() {
    let out = cellred(&["audit", "--type", "A1", "--type", "G2"]);
    assert_eq!(out.status.code(), Some(0));
    let types: Vec<String> = json(&out).as_array().unwrap().iter().map(|r| r["type"].as_str().unwrap().to_string()).collect();
    assert_eq!(types, ["A1", "G2"]);
}

#[test]
fn audit_output_is_deterministic() {
    let a = cellred(&["audit", "--type", "A3", "--format", "md"]);
    let b = cellred(&["audit", "--type", "A3", "--format", "md", "--jobs", "1"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).contains("| bookkeeping |"));
}

#[test]
fn audit_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.json");
    let out = cellred(&["audit", "--type", "A2", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["type"], "A2");
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1, "no temporary file left behind");
}

#[test]
fn unsupported_type_exits_with_usage_error() {
    let out = cellred(&["audit", "--type", "E8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sl3_reports_kernels_and_orbits() {
    let out = cellred(&["sl3", "--p", "5", "--p", "7", "--orbits"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports[0]["kernels"]["dim_ker_tau"], 15);
    assert_eq!(reports[1]["principal_series"]["regular_orbits"], 3);
    assert_eq!(reports[0]["principal_series"]["orbits"][0]["sum"], 186);
}

#[test]
fn sl3_orbits_skip_small_primes() {
    let out = cellred(&["sl3", "--p", "3", "--orbits"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)[0]["principal_series"].is_null());
}

#[test]
fn sl3_rejects_composite_modulus() {
    let out = cellred(&["sl3", "--p", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn table_dumps() {
    let out = cellred(&["tables", "dump", "--what", "klpoly", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["table"], "klpoly");
    assert_eq!(v["polynomials"].as_object().unwrap().len(), 6);

    let v = json(&cellred(&["tables", "dump", "--what", "delta", "--type", "B2"]));
    assert_eq!(v["delta"].as_object().unwrap().len(), 6);

    let v = json(&cellred(&["tables", "dump", "--what", "cells", "--type", "G2"]));
    assert_eq!(v["two_sided_cells"].as_array().unwrap().len(), 3);

    let out = cellred(&["tables", "dump", "--what", "delta", "--type", "A4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn data_directory_override_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let builtin = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/A1.json")).unwrap();
    std::fs::write(dir.path().join("A1.json"), &builtin).unwrap();
    let ok = Command::new(env!("CARGO_BIN_EXE_cellred"))
        .args(["audit", "--type", "A1"])
        .env("CELLRED_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));

    let mut v: Value = serde_json::from_str(&builtin).unwrap();
    v["min_prime"] = Value::from(7);
    std::fs::write(dir.path().join("A1.json"), v.to_string()).unwrap();
    let bad = Command::new(env!("CARGO_BIN_EXE_cellred"))
        .args(["audit", "--type", "A1"])
        .env("CELLRED_DATA_DIR", dir.path())
        .output()
        .unwrap();
    assert_ne!(bad.status.code(), Some(0), "corrupted tables must not pass");
}
