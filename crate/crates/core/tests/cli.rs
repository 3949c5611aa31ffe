use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(rel)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superrigid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = run(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    v["result"].clone()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn branch_adjoint_of_sl3() {
    let r = json(&["branch", "--plus", "1", "--minus", "1", "--rank", "3", "--pieri"]);
    assert_eq!(r["dimension"], 8);
    assert_eq!(r["branches"].as_array().unwrap().len(), 4);
    assert_eq!(r["total_dimension"], 8);
}

#[test]
fn branch_lr_conserves_dimension() {
    let r = json(&[
        "branch",
        "--label",
        r#"{"plus":[2,1],"minus":[1],"rank":5}"#,
        "--lr",
        "2",
    ]);
    assert_eq!(r["total_dimension"], r["dimension"]);
}

#[test]
fn label_too_long_for_rank() {
    assert_eq!(code(&["branch", "--plus", "2,1", "--rank", "2", "--pieri"]), 2);
}

#[test]
fn dim_of_symmetric_square() {
    let r = json(&["dim", "--plus", "2", "--rank", "4"]);
    assert_eq!(r["dimension"], 10);
}

#[test]
fn depth_of_data_files() {
    assert_eq!(json(&["depth", "--rep", &data("reps/trivial.json")])["depth"], 1);
    assert_eq!(json(&["depth", "--rep", &data("reps/sum_zero_f2.json")])["depth"], 2);
    assert_eq!(code(&["depth", "--rep", &data("reps/malformed.json")]), 3);
    assert_eq!(code(&["depth", "--rep", &data("reps/missing.json")]), 3);
}

#[test]
fn group_table_sl3_mod_2() {
    let r = json(&["group-table", "3", "2"]);
    assert_eq!(r["order"], 168);
    let dims: Vec<u64> = r["irreducible_dims"]
        .as_array()
        .unwrap()
        .iter()
        .map(|d| d.as_u64().unwrap())
        .collect();
    assert_eq!(dims, vec![1, 3, 3, 6, 7, 8]);
}

#[test]
fn group_cap_exceeded() {
    assert_eq!(code(&["--group-cap", "100", "group-table", "3", "2"]), 4);
}

#[test]
fn bounds_quoted_values() {
    assert_eq!(
        json(&["bounds", "--n", "5", "--dim", "30"])["low_dimension_threshold"],
        30
    );
    assert_eq!(json(&["bounds", "--n", "5", "--dim", "29"])["algebraic_forced"], true);
}

#[test]
fn vic_run_growth_of_standard() {
    let r = json(&["vic-run", "--module", &data("modules/std.json"), "--ops", "growth"]);
    let g = &r["results"]["growth"];
    assert_eq!(g["class"], "polynomial");
    assert_eq!(g["polynomial_degree"]["degree"], 1);
}

#[test]
fn vic_run_unknown_op_is_usage_error() {
    let out = run(&[
        "vic-run",
        "--module",
        &data("modules/std.json"),
        "--ops",
        "growth,frobnicate",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("frobnicate"));
}

#[test]
fn table_output_is_default() {
    let out = run(&["dim", "--plus", "1", "--rank", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains("dimension"));
}

#[test]
fn cyclotomic_cap_exceeded() {
    let rep = data("reps/sum_zero_f2.json");
    assert_eq!(code(&["--cyclotomic-cap", "1", "depth", "--rep", &rep]), 4);
}
