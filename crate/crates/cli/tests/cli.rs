//! End-to-end runs of the `derivlab` binary.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn derivlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivlab"))
        .args(args)
        .output()
        .expect("spawn derivlab")
}

fn check(dir: &Path, name: &str, task: &str) -> Output {
    let path = dir.join(name);
    fs::write(&path, task).unwrap();
    derivlab(&["check", "--input", path.to_str().unwrap()])
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

const INTRO: &str = r#"{
  "schema": "derivlab/1",
  "ring": {"coefficients": "Q", "variables": ["x", "y", "z"]},
  "derivations": {
    "D": {"y": "x", "z": "y"},
    "E": {"x": "y", "y": "-z"}
  },
  "task": {
    "kind": "nil-membership",
    "set": ["D", "E"],
    "element": "x",
    "schedule": {"period": ["E", "D"]}
  }
}"#;

#[test]
fn intro_schedule_refutes() {
    let dir = TempDir::new().unwrap();
    let out = check(dir.path(), "intro.json", INTRO);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["schema"], "derivlab/1");
    assert_eq!(r["status"], "refuted");
    assert_eq!(r["result"]["verdict"], "refuted");
    assert_eq!(r["bounds"]["depth"], 16);
}

#[test]
fn deg_of_square() {
    let dir = TempDir::new().unwrap();
    let task = r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
        "derivations": {"dx": {"x": "1"}},
        "task": {"kind": "deg", "set": ["dx"], "element": "x^2"}}"#;
    let out = check(dir.path(), "deg.json", task);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["degree"], 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("certified degree 2"));
}

#[test]
fn inconclusive_at_bound() {
    let dir = TempDir::new().unwrap();
    let task = r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
        "derivations": {"xdx": {"x": "x"}},
        "task": {"kind": "deg", "set": ["xdx"], "element": "x", "depth": 5}}"#;
    let out = check(dir.path(), "inc.json", task);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["bounds"]["depth"], 5);
}

#[test]
fn malformed_polynomial() {
    let dir = TempDir::new().unwrap();
    let task = r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
        "derivations": {"dx": {"x": "1"}},
        "task": {"kind": "deg", "set": ["dx"], "element": "x +"}}"#;
    let out = check(dir.path(), "bad.json", task);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("task.element") && err.contains("position"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn validation_names_the_field() {
    let dir = TempDir::new().unwrap();
    let task = r#"{"schema": "derivlab/1", "ring": {"variables": ["x"]},
        "derivations": {"dx": {"x": "1"}},
        "task": {"kind": "deg", "set": ["dy"], "element": "x", "depth": 0}}"#;
    let out = check(dir.path(), "v.json", task);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("task.depth"));

    let task = r#"{"schema": "derivlab/1", "task": {"kind": "deg", "set": ["dy"], "element": "x"}}"#;
    let out = check(dir.path(), "v2.json", task);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("task.set"));
}

#[test]
fn reproduce_examples() {
    let out = derivlab(&["reproduce", "ex-298", "--n", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["params"]["n"], 4);
    assert!(r["claims"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let out = derivlab(&["reproduce", "intro-DE"]);
    assert_eq!(out.status.code(), Some(0));

    let out = derivlab(&["reproduce", "no-such"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such"));

    let out = derivlab(&["reproduce", "ex-298", "--n", "1"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn classify_file() {
    let dir = TempDir::new().unwrap();
    let heis = dir.path().join("heis.json");
    fs::write(
        &heis,
        r#"{"schema": "derivlab/1", "kind": "lie", "basis": ["x", "y", "z"],
            "table": [{"i": "x", "j": "y", "k": "z", "c": 1}, {"i": "y", "j": "x", "k": "z", "c": -1}]}"#,
    )
    .unwrap();
    let out = derivlab(&["classify", "--algebra", heis.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));

    let aff = dir.path().join("aff.json");
    fs::write(
        &aff,
        r#"{"schema": "derivlab/1", "kind": "lie", "basis": ["a", "b"],
            "table": [{"i": 0, "j": 1, "k": 1, "c": 1}, {"i": 1, "j": 0, "k": 1, "c": -1}]}"#,
    )
    .unwrap();
    let out = derivlab(&["classify", "--algebra", aff.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn out_file_and_determinism() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("intro.json");
    fs::write(&input, INTRO).unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = derivlab(&["check", "--input", input.to_str().unwrap(), "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1));
        assert!(String::from_utf8_lossy(&out.stdout).starts_with("nil-membership: refuted"));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let r1 = derivlab(&["reproduce", "ex-928349", "--seed", "7"]);
    let r2 = derivlab(&["reproduce", "ex-928349", "--seed", "7"]);
    assert_eq!(r1.status.code(), Some(0));
    assert_eq!(r1.stdout, r2.stdout);
}

#[test]
fn remaining_task_kinds() {
    let dir = TempDir::new().unwrap();
    let head = r#""schema": "derivlab/1", "ring": {"variables": ["x", "y"]},
        "derivations": {"dx": {"x": "1"}, "xdy": {"y": "x"}, "xdx": {"x": "x"}},
        "operators": {"N": [[0, 1], [0, 0]]}"#;
    let cases = [
        (r#"{"kind": "set-lnd", "set": ["dx", "xdy"]}"#, 0),
        (r#"{"kind": "set-lnd", "set": ["N"]}"#, 0),
        (r#"{"kind": "lie-unil", "set": ["dx", "xdy"], "element": "y^2"}"#, 0),
        (r#"{"kind": "ad-index", "d": "dx", "e": "xdy"}"#, 0),
        (r#"{"kind": "fg-nilpotency", "generators": ["dx", "xdy"]}"#, 0),
        (r#"{"kind": "fg-nilpotency", "generators": ["dx", "xdx"]}"#, 1),
        (r#"{"kind": "reproduce", "example": "intro-DE", "char": 7}"#, 0),
        (r#"{"kind": "deg", "set": ["dx", "N"], "element": "x"}"#, 3),
    ];
    for (i, (task, code)) in cases.iter().enumerate() {
        let out = check(dir.path(), &format!("t{i}.json"), &format!("{{{head}, \"task\": {task}}}"));
        assert_eq!(out.status.code(), Some(*code), "{task}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
