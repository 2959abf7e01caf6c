use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn altsub(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altsub")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn validate_accepts_and_rejects() {
    let ok = altsub(&["validate", fixture("trefoil.pd").to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("prime: true"));

    let bad = altsub(&["validate", fixture("invalid/unknot1.pd").to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(stdout(&bad).contains("reduced: false"));
    assert!(stderr(&bad).starts_with("error:"));

    let split = altsub(&["build-rule", fixture("invalid/split_hopf.pd").to_str().unwrap()]);
    assert_eq!(split.status.code(), Some(2));
    assert!(stdout(&split).contains("non_split: false"));
}

#[test]
fn missing_input_is_an_error() {
    let o = altsub(&["build-rule", "/nonexistent/x.pd"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).lines().any(|l| l.starts_with("error:")));
}

#[test]
fn build_rule_json() {
    let o = altsub(&["build-rule", fixture("hopf.pd").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "rule-v1");
    let names: Vec<&str> = v["types"].as_array().unwrap().iter().map(|t| t["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["A", "B", "C", "trunc"]);
}

#[test]
fn subdivide_writes_all_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let csv = dir.path().join("t.csv");
    let json = dir.path().join("t.json");
    let o = altsub(&[
        "subdivide",
        fixture("trefoil.pd").to_str().unwrap(),
        "--depth",
        "2",
        "--oracle-check",
        "--format",
        "json",
        "--out",
        json.to_str().unwrap(),
        "--render",
        svg.to_str().unwrap(),
        "--census",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stderr(&o).contains("isomorphic"));
    assert!(std::fs::read_to_string(&svg).unwrap().contains("<polygon"));
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("stage,type,count\n"));

    // a saved tiling renders to the same bytes as a fresh one
    let again = altsub(&["render", json.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0), "{}", stderr(&again));
    assert_eq!(stdout(&again), std::fs::read_to_string(&svg).unwrap());
}

#[test]
fn oracle_needs_sphere_seed() {
    let o = altsub(&["subdivide", fixture("hopf.pd").to_str().unwrap(), "--seed", "A", "--oracle-check"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_seed_fails() {
    let o = altsub(&["subdivide", fixture("hopf.pd").to_str().unwrap(), "--seed", "Q"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).starts_with("error:"));
}

#[test]
fn census_with_recurrence() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("rec.json");
    let o = altsub(&[
        "census",
        fixture("hopf.pd").to_str().unwrap(),
        "--seed",
        "A",
        "--depth",
        "9",
        "--recurrence",
        rec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 1 + 10 * 4);
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rec).unwrap()).unwrap();
    assert!(v["order"].as_u64().unwrap() <= 12);
    assert_eq!(v["verified_horizon"], 10);
}

#[test]
fn render_circle_and_flip() {
    let o = altsub(&["render", fixture("figure8.pd").to_str().unwrap(), "--depth", "1", "--shape", "circle", "--flip-orientation"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("<?xml"));
}
