use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn liecore(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liecore"))
        .args(args)
        .env("RUST_LOG", "warn")
        .env_remove("LIECORE_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = liecore(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn g2_orbits_report_is_reproducible() {
    let a = liecore(&["--type", "G2", "--seed", "4", "orbits"]);
    let b = liecore(&["--type", "G2", "--seed", "4", "orbits"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let doc: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(doc["schema"], "liecore-report/1");
    assert_eq!(doc["result"]["count"], 4);
}

#[test]
fn type_letter_with_rank() {
    let doc = json(&["--type", "E", "--rank", "7", "orbits"]);
    assert_eq!(doc["type"], "E7");
    assert_eq!(doc["result"]["count"], 44);
}

#[test]
fn e6_reachable_count() {
    let doc = json(&["--type", "E6", "reachable"]);
    assert_eq!(doc["result"]["reachable"], 6);
    assert_eq!(doc["result"]["panyushev_mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn f4_props_text() {
    let out = liecore(&["--type", "F4", "--format", "text", "props"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[1,0,1,0]\t1\t3"), "{text}");
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_liecore"))
            .args(["--type", "G2", "orbits"])
            .env("LIECORE_CACHE_DIR", dir.path())
            .env("RUST_LOG", "warn")
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success());
    assert!(dir.path().join("orbits-G2-1.json").exists());
    assert_eq!(run().stdout, first.stdout);
}

#[test]
fn sl3_adjoint_hasse_dot_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a2.dot");
    let out = liecore(&["--type", "A2", "--hw", "1,1", "hasse", "--dot", path.to_str().unwrap()]);
    assert!(out.status.success());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("S1 -> S2"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["result"]["edges"], serde_json::json!([[1, 2]]));
}

#[test]
fn b6_spinor_hasse_has_thirteen_nodes() {
    let out = liecore(&["--type", "B6", "--hw", "0,0,0,0,0,1", "--format", "dot", "hasse"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("[label=").count(), 13);
}

#[test]
fn failures_exit_nonzero() {
    assert!(!liecore(&["--type", "E8", "orbits"]).status.success());
    assert!(!liecore(&["--type", "A1", "--hw", "2", "closure", "--pair", "1", "5"]).status.success());
    assert!(!liecore(&["--type", "A1", "strata"]).status.success());
    assert!(!liecore(&["--type", "Q3", "orbits"]).status.success());
}

#[test]
fn closure_pair_reports_a_replayed_certificate() {
    let doc = json(&["--type", "A1", "--hw", "3", "closure", "--pair", "2", "1"]);
    assert_eq!(doc["result"]["included"], false);
    assert_eq!(doc["result"]["verified"], true);
}
