use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_radtower"))
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("radtower-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter(|l| l.starts_with('{') && l.contains("\"status\""))
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const K2: &str = r#"{"vertices":["a","b"],"edges":[["a","b"]]}"#;
const P3: &str = r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#;

#[test]
fn transform_writes_colored_graph() {
    let src = scratch("k2.json", K2);
    let dst = src.with_file_name("k2-colored.json");
    let out = bin().arg("transform").arg(&src).arg("--out").arg(&dst).output().unwrap();
    assert!(out.status.success());
    let reps = lines(&out);
    assert_eq!(reps.len(), 4);
    assert!(reps.iter().all(|r| r["status"] == "pass"));
    let cg: Value = serde_json::from_str(&std::fs::read_to_string(&dst).unwrap()).unwrap();
    assert_eq!(cg["vertices"].as_array().unwrap().len(), 6);
    assert_eq!(cg["edges"].as_array().unwrap().len(), 9);
}

#[test]
fn star_clause_reported_as_fail_on_path() {
    let src = scratch("p3.json", P3);
    let out = bin().arg("transform").arg(&src).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let reps = lines(&out);
    let star = reps.iter().find(|r| r["check"] == "color classes are stars").unwrap();
    assert_eq!(star["status"], "fail");
    let agree = reps.iter().find(|r| r["check"] == "automorphism groups agree").unwrap();
    assert_eq!(agree["status"], "pass");
}

#[test]
fn disconnected_graph_is_an_error() {
    let src = scratch("dis.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"]]}"#);
    let out = bin().arg("transform").arg(&src).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not connected"));
}

#[test]
fn build_field_k2() {
    let src = scratch("k2b.json", K2);
    let out = bin().args(["build-field", "--budget", "30"]).arg(&src).output().unwrap();
    assert!(out.status.success());
    let reps = lines(&out);
    assert_eq!(reps[0]["details"]["dimension"], "5");
    assert_eq!(reps.len(), 5);
    assert!(reps.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn build_field_cap() {
    let src = scratch("k2c.json", K2);
    let out = bin().args(["build-field", "--depth", "3", "--cap", "10"]).arg(&src).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn towers() {
    let out = bin().args(["towers", "--group", "alt:5"]).output().unwrap();
    assert!(out.status.success());
    let r = &lines(&out)[0];
    assert_eq!(r["details"]["tau"], 1);
    let out = bin().args(["towers", "--group", "sym:4", "--subgroup", "(0 1)"]).output().unwrap();
    let r = &lines(&out)[0];
    assert_eq!(r["details"]["tau"], 2);
    let out = bin().args(["towers", "--group", "nope:3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_groups_sorted() {
    let out = bin().args(["--sorted", "verify", "--suite", "groups", "--budget", "10"]).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let reps = lines(&out);
    let names: Vec<&str> = reps.iter().map(|r| r["check"].as_str().unwrap()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert!(reps.iter().any(|r| r["status"] == "unknown"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = bin().args(["verify", "--suite", "nope"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
