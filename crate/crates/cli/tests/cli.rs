use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quartic(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quartic"));
    c.args(args).env_remove("QP_CACHE");
    for (k, v) in env {
        c.env(k, v);
    }
    c.output().expect("run quartic")
}

fn reports(out: &Output) -> Vec<Value> {
    let v: Value = serde_json::from_slice(&out.stdout).expect("json on stdout");
    v.as_array().expect("array of reports").clone()
}

fn strip_timing(mut rs: Vec<Value>) -> Vec<Value> {
    for r in &mut rs {
        r.as_object_mut().unwrap().remove("timing_ms");
    }
    rs
}

#[test]
fn f73_suite_passes_with_twelve_reports() {
    let out = quartic(&["verify", "--mode", "f73", "--report", "json", "all"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rs = reports(&out);
    assert_eq!(rs.len(), 12);
    for r in &rs {
        assert_eq!(r["pass"], true, "{}", r["command"]);
        assert_eq!(r["field_mode"], "f73");
        assert!(r["checks"].as_array().is_some_and(|c| !c.is_empty()));
    }
}

#[test]
fn galois_matrices_match_golden() {
    let out = quartic(&["verify", "--mode", "f73", "galois-matrices"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("1/1 reports passed"));
}

#[test]
fn exact_effective_count_is_166() {
    let out = quartic(&["verify", "--mode", "exact", "--report", "json", "effective-count"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    let check = rs[0]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "effective degree-2 classes over Q(zeta8)").unwrap();
    assert_eq!(check["computed"], 166);
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(quartic(&["verify", "frobnicate"], &[]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "mordell-weil", "Q_7"], &[]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "basis", "Q"], &[]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "--golden", "/nonexistent/golden.json", "basis"], &[]).status.code(), Some(2));
    assert_eq!(quartic(&["verify", "--mode", "f37", "basis"], &[]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_1_and_is_named() {
    let dir = tempfile::tempdir().unwrap();
    let mut g: Value = serde_json::from_str(include_str!("../../core/data/golden.json")).unwrap();
    g["zeta"]["counts"]["n2"] = 29.into();
    let path = dir.path().join("golden.json");
    std::fs::write(&path, g.to_string()).unwrap();
    let out = quartic(&["verify", "--golden", path.to_str().unwrap(), "zeta-check"], &[]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("first failing check: zeta-check: N_2 over F_9"), "{err}");
}

#[test]
fn mordell_weil_single_field() {
    let out = quartic(&["verify", "--report", "json", "mordell-weil", "Q_sqrtm2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rs = reports(&out);
    assert_eq!(rs[0]["command"], "mordell-weil Q_sqrtm2");
    assert_eq!(rs[0]["checks"][0]["computed"], serde_json::json!([3, 0]));
}

#[test]
fn env_cache_path_overrides_flag() {
    let flag = tempfile::tempdir().unwrap();
    let env = tempfile::tempdir().unwrap();
    let out = quartic(&["verify", "--cache", flag.path().to_str().unwrap(), "verify-rohrlich"], &[("QP_CACHE", env.path())]);
    assert_eq!(out.status.code(), Some(0));
    assert!(env.path().join("f73.jsonl").exists());
    assert!(env.path().join("exact.jsonl").exists());
    assert!(!flag.path().join("f73.jsonl").exists());
}

#[test]
fn reports_are_deterministic_across_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = |jobs: &'static str| ["verify", "--report", "json", "--jobs", jobs, "--cache", cache, "all"];
    let a = strip_timing(reports(&quartic(&args("1"), &[])));
    let b = strip_timing(reports(&quartic(&args("4"), &[])));
    let c = strip_timing(reports(&quartic(&["verify", "--report", "json", "--jobs", "3", "all"], &[])));
    assert_eq!(a, b);
    assert_eq!(a, c);
}

#[test]
fn census_prints_188_records() {
    let out = quartic(&["census"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 188);
}
