use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_symbolic-pyramid");
const FIXTURE: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/example_table.json");

const STUCK_TABLE: &str = r#"{
  "variables": [
    {"name": "i", "kind": "interval", "domain": [0, 10]},
    {"name": "c", "kind": "categorical", "domain": ["a", "b"]}
  ],
  "rows": [
    {"id": 1, "cells": [[0, 3], "a"]},
    {"id": 2, "cells": [[2, 5], "b"]},
    {"id": 3, "cells": [[0, 2.5], ["a", "b"]]}
  ]
}"#;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn build_writes_document_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pyramid.json");
    let dot = dir.path().join("pyramid.dot");
    let o = run(&[
        "build",
        "--input",
        FIXTURE,
        "--output",
        path(&out),
        "--dot",
        path(&dot),
        "--validate",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    assert!(String::from_utf8_lossy(&o.stderr).contains("PASS"));

    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["order"], serde_json::json!([5, 4, 2, 1, 3, 6]));
    assert_eq!(doc["meta"]["NG"], 21);
    assert_eq!(doc["validation"]["axiom3_intersection_closed"], true);
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn build_to_stdout_with_order_and_alpha() {
    let o = run(&[
        "build",
        "--input",
        FIXTURE,
        "--order",
        "6,4,2,5,3,1",
        "--alpha",
        "0.5",
        "--output",
        "-",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["meta"]["algorithm"], "capso");
    assert_eq!(doc["meta"]["alpha"], 0.5);
    assert!(doc["nodes"][0]["extent_alpha"].is_array());
}

#[test]
fn algorithm_failures_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("stuck.json");
    fs::write(&input, STUCK_TABLE).unwrap();
    let o = run(&[
        "build",
        "--input",
        path(&input),
        "--order",
        "1,2,3",
        "--output",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no aggregable pair"));
    assert!(o.stdout.is_empty());

    let o = run(&[
        "build",
        "--input",
        FIXTURE,
        "--max-iter",
        "2",
        "--output",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("iteration limit"));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{\"variables\": [}").unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["build", "--input", path(&bad), "--output", "-"],
        vec![
            "build",
            "--input",
            "/nonexistent/table.json",
            "--output",
            "-",
        ],
        vec![
            "build", "--input", FIXTURE, "--order", "1,2,3", "--output", "-",
        ],
        vec![
            "build", "--input", FIXTURE, "--alpha", "1.5", "--output", "-",
        ],
        vec!["build", "--input", FIXTURE],
        vec!["frobnicate"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(&["build", "--input", path(&bad), "--output", "-"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}
