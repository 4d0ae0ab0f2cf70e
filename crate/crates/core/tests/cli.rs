use std::path::Path;
use std::process::{Command, Output};

use hermgrs::cli::CodeDocument;
use serde_json::Value;

fn hermgrs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hermgrs")).args(args).env_remove("HERMGRS_MAX_ENUM").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn construct2_doc() -> String {
    let out = hermgrs(&["construct2", "--p", "3", "--m", "1", "--a", "0", "--b", "1", "--n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    stdout(&out)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn construct2_gives_certified_code() {
    let doc = CodeDocument::from_json(&construct2_doc()).unwrap();
    assert_eq!((doc.p, doc.m, doc.n, doc.k), (3, 1, 4, 2));
    assert_eq!(doc.schema_version, 1);
    assert_eq!(doc.top_modulus, vec![1, 0, 1]);
    assert!(doc.certificate.gram_zero && doc.certificate.theorem7_ok);
    assert_eq!(doc.certificate.min_distance, Some(3));
    assert_eq!(doc.provenance.construction, "construction2");
}

#[test]
fn verify_accepts_then_rejects_tampered_v() {
    let dir = tempfile::tempdir().unwrap();
    let text = construct2_doc();
    let good = write(dir.path(), "code.json", &text);
    let out = hermgrs(&["verify", "--in", &good]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));

    let mut json: Value = serde_json::from_str(&text).unwrap();
    json["v"][1] = Value::from(4);
    let bad = write(dir.path(), "tampered.json", &serde_json::to_string_pretty(&json).unwrap());
    let out = hermgrs(&["verify", "--in", &bad]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("gram nonzero at ("), "{err}");
}

#[test]
fn export_import_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let text = construct2_doc();
    let doc = CodeDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text, "re-serialization must be byte-identical");
    let path = write(dir.path(), "code.json", &doc.to_json());
    let first = hermgrs(&["verify", "--in", &path, "--json"]);
    let second = hermgrs(&["verify", "--in", &path, "--json"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let verdict: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(verdict["self_dual"], Value::Bool(true));
    assert_eq!(verdict["min_distance"], Value::from(3));
}

#[test]
fn classify_q3_n6_is_empty() {
    let out = hermgrs(&["classify", "--p", "3", "--m", "1", "--n", "6", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["total"], Value::from(84));
    assert_eq!(report["admissible"].as_array().unwrap().len(), 0);
    assert_eq!(report["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn classify_jobs_do_not_change_the_report() {
    let one = hermgrs(&["classify", "--p", "3", "--m", "1", "--n", "4", "--json", "--jobs", "1"]);
    let two = hermgrs(&["classify", "--p", "3", "--m", "1", "--n", "4", "--json", "--jobs", "3"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn seeded_construction_is_reproducible() {
    let args = ["construct1", "--p", "5", "--m", "1", "--a", "1", "--b", "0", "--n", "4", "--seed", "42", "--json"];
    let a = hermgrs(&args);
    let b = hermgrs(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let doc = CodeDocument::from_json(&stdout(&a)).unwrap();
    assert_eq!(doc.provenance.params.get("seed"), Some(&42));
    assert!(doc.alpha.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = hermgrs(&["construct2", "--p", "3", "--m", "1", "--a", "0", "--bee", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--bee"));
    let out = hermgrs(&["field-info", "--p", "6", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hermgrs"))
        .args(["classify", "--p", "3", "--m", "1", "--n", "4"])
        .env("HERMGRS_MAX_ENUM", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("126"), "{}", stderr(&out));
}

#[test]
fn inline_mindist_and_theorem7() {
    let out =
        hermgrs(&["mindist", "--p", "3", "--m", "1", "--k", "2", "--alpha", "1,2,3,6", "--v", "1,1,4,4", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["min_distance"], Value::from(3));
    let out = hermgrs(&["theorem7", "--p", "3", "--m", "1", "--k", "2", "--alpha", "1,2,3,6", "--v", "1,1,4,4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degree criterion: true"));
}

#[test]
fn export_table_rows_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = hermgrs(&["export-table", "--p", "2", "--m", "2", "--max-n", "4", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let table: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = table["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    let built: Vec<&Value> = rows.iter().filter(|r| r["outcome"] == "ok").collect();
    assert!(!built.is_empty());
    for (i, row) in built.iter().enumerate().step_by(17) {
        let path = write(dir.path(), &format!("row{i}.json"), &serde_json::to_string_pretty(&row["code"]).unwrap());
        let out = hermgrs(&["verify", "--in", &path]);
        assert_eq!(out.status.code(), Some(0), "row {i}: {}", stderr(&out));
    }
}
