use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn invdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invdeg")).args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = invdeg(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (out.status.code().unwrap(), v)
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn report_envelope() {
    let (code, v) = report(&["certify", "maltese"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "certify maltese");
    assert_eq!(v["verdict"], "pass");
    assert!(v["wall_time_ms"].is_u64());
}

#[test]
fn pretty_and_compact_agree() {
    let pretty = invdeg(&["certify", "dp"]);
    let compact = invdeg(&["--json", "certify", "dp"]);
    assert_eq!(pretty.status.code(), compact.status.code());
    let mut a: Value = serde_json::from_slice(&pretty.stdout).unwrap();
    let mut b: Value = serde_json::from_slice(&compact.stdout).unwrap();
    a["wall_time_ms"] = Value::Null;
    b["wall_time_ms"] = Value::Null;
    assert_eq!(a, b);
    assert!(String::from_utf8_lossy(&pretty.stderr).contains("PASS"));
    assert!(compact.stderr.is_empty());
}

#[test]
fn details_are_deterministic() {
    let (_, a) = report(&["search", "--n-max", "6"]);
    let (_, b) = report(&["search", "--n-max", "6"]);
    assert_eq!(a["details"], b["details"]);
    assert_eq!(a["verdict"], "pass");
}

#[test]
fn dp_reports_exact_distance() {
    let (code, v) = report(&["certify", "dp"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["shortest_path"], "37/60");
    assert_eq!(v["details"]["nodes"].as_array().unwrap().len(), 10);
    assert_eq!(v["details"]["arcs"].as_array().unwrap().len(), 28);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(invdeg(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(invdeg(&["search", "--n-max", "9"]).status.code(), Some(2));
    assert_eq!(invdeg(&["certify", "star", "--x-max", "3"]).status.code(), Some(2));
    assert_eq!(invdeg(&["certify", "bounds", "--input", "/nonexistent/graph.txt"]).status.code(), Some(2));
}

#[test]
fn bounds_on_emitted_family_member() {
    let path = scratch("t12.txt");
    let emit = invdeg(&["families", "emit", "--family", "t", "--n", "12", "--output", path.to_str().unwrap()]);
    assert!(emit.status.success());
    let (code, v) = report(&["certify", "bounds", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["m"], 30);
    assert_eq!(v["details"]["aux"]["slack"], "5/3");
}

#[test]
fn bounds_reject_non_planar_input() {
    let path = scratch("k5.txt");
    std::fs::write(&path, "5 10\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n").unwrap();
    assert_eq!(invdeg(&["certify", "bounds", "--input", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn k5_minus_meets_the_strong_bound_with_equality() {
    let path = scratch("k5m.g6");
    let emit = invdeg(&[
        "families", "emit", "--family", "k5-minus", "--format", "graph6", "--output", path.to_str().unwrap(),
    ]);
    assert!(emit.status.success());
    let (code, v) = report(&["certify", "bounds", "--input", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["strong_main"]["slack"], "0/1");
}

#[test]
fn emit_prints_graph_text_without_output() {
    let out = invdeg(&["families", "emit", "--family", "path", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3 2\n0 1\n1 2\n");
}

#[test]
fn surgery_demo_contract() {
    let (code, v) = report(&["surgery", "demo"]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["contract_holds"], true);
    assert_eq!(v["details"]["report"]["after"]["d"], 3);
}

#[test]
fn search_emits_witness_files() {
    let dir = scratch("witnesses");
    let (code, v) = report(&["search", "--n-max", "5", "--emit-graphs", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["details"]["equality_witnesses"].as_array().unwrap().len(), 1);
    assert!(dir.join("equality_0.txt").exists());
    assert!(dir.join("min_slack.txt").exists());
}

#[test]
fn families_check_passes() {
    let (code, v) = report(&["families", "check", "--max-n", "30"]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["verdict"], "pass");
}
