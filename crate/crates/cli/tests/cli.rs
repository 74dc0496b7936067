use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn mss(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mss"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn compute_on_a_point_writes_one_entry() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("point.json"), r#"{"kind": "ahss", "complex": "point", "coefficients": "Z"}"#).unwrap();
    let out = mss(dir.path(), &["compute", "--input", "point.json", "--out", "o"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let page = json(&dir.path().join("o/point_E1.json"));
    assert_eq!(page["schema_version"], 1);
    assert_eq!(page["entries"].as_array().unwrap().len(), 1);
    assert_eq!(page["entries"][0]["rank"], 1);
    assert_eq!(json(&dir.path().join("o/point_abutment.json"))["ok"], true);
}

#[test]
fn compute_honours_overrides_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("rp2.json"), r#"{"kind": "serre", "complex": "rp2", "base": "point", "map": [0,0,0,0,0,0]}"#).unwrap();
    let out = mss(dir.path(), &["compute", "--input", "rp2.json", "--modulus", "2", "--pages", "1..1", "--format", "csv"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("rp2_E1.csv")).unwrap();
    // H^*(RP^2; Z/2) in filtration 0: three rows of Z/2
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 3, "{csv}");
    assert!(rows.iter().all(|r| r[2] == "0" && r[4] == "0" && r[5] == "2"), "{csv}");
    assert!(!dir.path().join("rp2_E2.csv").exists());
}

#[test]
fn check_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = mss(dir.path(), &["check", "--range", "4", "--seed", "3", "--out", "."]);
    assert!(out.status.success());
    let suite = json(&dir.path().join("check.json"));
    assert!(suite.as_array().unwrap().iter().all(|a| a["passed"] == true));
}

#[test]
fn pair_on_the_torus_reports_the_sign_twist() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"kind": "ahss", "complex": "torus", "coefficients": "laurent(1)", "options": {"window": [0, 2]}}"#;
    fs::write(dir.path().join("torus.json"), spec).unwrap();
    let out = mss(dir.path(), &["pair", "--input", "torus.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let d = dir.path();
    assert_eq!(json(&d.join("torus_graded.json"))["isomorphic"], true);
    assert_eq!(json(&d.join("torus_ungraded.json"))["isomorphic"], false);
    assert!(json(&d.join("torus_ungraded.json"))["counterexample"].is_array());
    assert_eq!(json(&d.join("torus_ungraded_twisted.json"))["isomorphic"], true);
    assert_eq!(json(&d.join("torus_leibniz_E2.json"))["isomorphic"], true);
    assert!(d.join("torus_pairing_E2.json").exists());
}

#[test]
fn pair_compares_two_towers() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("a.json"), r#"{"kind": "serre", "complex": "torus", "base": "circle", "map": [0,0,0,1,1,1,2,2,2], "modulus": 2}"#).unwrap();
    fs::write(d.join("b.json"), r#"{"kind": "serre", "complex": "torus", "base": "circle", "map": [0,0,0,1,1,1,2,2,2], "modulus": 2}"#).unwrap();
    let out = mss(d, &["pair", "--input", "a.json", "--input", "b.json", "--pages", "2"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&d.join("compare_E2.json"))["isomorphic"], true);
}

#[test]
fn group_pair_writes_the_remark_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"kind": "group", "group": {"cyclic": 3}, "coefficients": "laurent(1,3)", "options": {"maxdim": 4, "degrees": [-1, 0, 1]}}"#;
    fs::write(dir.path().join("g.json"), spec).unwrap();
    let out = mss(dir.path(), &["pair", "--input", "g.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&dir.path().join("g_remark.json"))["isomorphic"], true);
}

#[test]
fn convert_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    fs::write(d.join("t.json"), r#"{"kind": "ahss", "complex": "torus", "coefficients": "Z", "options": {"window": [0, 2]}}"#).unwrap();
    assert!(mss(d, &["compute", "--input", "t.json", "--pages", "2"]).status.success());
    assert!(mss(d, &["convert", "--input", "t_E2.json", "--to", "paper"]).status.success());
    assert_eq!(json(&d.join("t_E2_paper.json"))["indexing"], "paper");
    assert!(mss(d, &["convert", "--input", "t_E2_paper.json", "--to", "engine"]).status.success());
    assert_eq!(fs::read(d.join("t_E2.json")).unwrap(), fs::read(d.join("t_E2_paper_engine.json")).unwrap());
}

#[test]
fn schema_errors_name_the_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.json"), "{\"kind\": \"ahss\",\n \"colour\": 1}").unwrap();
    let out = mss(dir.path(), &["compute", "--input", "bad.json"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");
}

#[test]
fn pair_without_a_product_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.json"), r#"{"kind": "descent", "complex": "circle", "cover": [[[0,1],[1,2]], [[0,2]]]}"#).unwrap();
    let out = mss(dir.path(), &["pair", "--input", "c.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bockstein_compute_writes_the_couple() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("b.json"), r#"{"kind": "bockstein", "complex": "rp3", "coefficients": "Z/2"}"#).unwrap();
    let out = mss(dir.path(), &["compute", "--input", "b.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let couple = json(&dir.path().join("b_couple.json"));
    let nodes = couple["nodes"].as_array().unwrap();
    assert_eq!(nodes.iter().filter(|n| n["node"] == "E").count(), 4);
    assert!(couple["maps"].as_array().unwrap().iter().any(|m| m["map"] == "k"));
    assert!(dir.path().join("b_E2.json").exists());
}
