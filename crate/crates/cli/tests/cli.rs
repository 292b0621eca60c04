use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn gsu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gsu")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

#[test]
fn analyze_worked_example() {
    let out = gsu(&["analyze", "--function", fixture("remark39.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["lhs"], 4);
    assert_eq!(v["rhs_sharp"], 4);
    assert_eq!(v["rhs_classical"], 3);
    assert_eq!(v["sharp_equality"], true);
    assert!(v.get("certificate").is_none());
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn analyze_with_bundle_adds_rank_support() {
    let out = gsu(&[
        "analyze",
        "--function",
        fixture("remark39.json").to_str().unwrap(),
        "--bundle",
        fixture("s3_bundle.json").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["rank_support"], 2);
}

#[test]
fn zero_function_is_a_validation_error() {
    let out = gsu(&["analyze", "--function", fixture("zero.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("identically zero"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(gsu(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(gsu(&["analyze"]).status.code(), Some(1));
    let out = gsu(&["chebotarev", "--p", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn chebotarev_five() {
    let out = gsu(&["chebotarev", "--p", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["all_nonzero"], true);
    assert_eq!(v["minors"], 251);
    assert_eq!(gsu(&["chebotarev", "--p", "6"]).status.code(), Some(2));
}

#[test]
fn witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let out = gsu(&[
        "make-witness", "--group", "S3", "--subgroup", "0,2,5", "--gamma", "1", "--field", "Q", "--out", w.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&gsu(&["analyze", "--function", w.to_str().unwrap()]));
    assert_eq!(v["supp_size"], 3);
    assert_eq!(v["dim"], 2);
    assert_eq!(v["classical_equality"], true);
    assert_eq!(v["certificate"]["kind"], "coset-indicator-like");
}

#[test]
fn sweep_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"groups":["S3","Z4"],"fields":["GF(2)","GF(3)"],"actions":"all-transitive","max_order":8,"normalize":"leading-one","jobs":1,"seed":5}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(gsu(&["sweep", "--config", cfg, "--out", a.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(gsu(&["sweep", "--config", cfg, "--jobs", "3", "--out", b.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let ledger: Value = serde_json::from_slice(&std::fs::read(&a).unwrap()).unwrap();
    assert_eq!(ledger["violations"].as_array().unwrap().len(), 0);
    assert_eq!(ledger["instances"], ledger["expected_instances"]);

    let csv = gsu(&["sweep", "--config", cfg, "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("group,action,field,f-index,supp,dim,block,lhs,rhs_sharp,rhs_classical,sharp_eq,classical_eq")
    );
    assert_eq!(lines.count() as u64, ledger["instances"].as_u64().unwrap());
}

#[test]
fn empty_sweep_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"groups":[],"fields":["GF(2)"]}"#).unwrap();
    assert_eq!(gsu(&["sweep", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_selected_suites() {
    let out = gsu(&["verify", "--suite", "worked-example", "--suite", "closure-laws", "--samples", "20", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["tallies"]["worked-example"]["failed"], 0);
    assert_eq!(gsu(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn fourier_dump_on_abelian_group() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.json");
    std::fs::write(&f, r#"{"action":{"group":"Z6","kind":"regular"},"field":"GF(7)","values":["1","1","0","0","0","0"]}"#).unwrap();
    let v = json_of(&gsu(&["fourier", "--function", f.to_str().unwrap()]));
    assert_eq!(v["rank_support"], 5);
    let mut entries: Vec<String> = v["blocks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["matrix"][0][0].as_str().unwrap().to_string())
        .collect();
    entries.sort();
    assert_eq!(entries, ["0", "2", "3", "4", "5", "6"]);
}
