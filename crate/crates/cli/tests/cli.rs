use std::process::{Command, Output};

use artin_core::ff::field_of_order;
use artin_core::pgl2::Pgl2;
use serde_json::Value;

fn artin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = artin(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

/// A JSON element back in the text encoding accepted on input.
fn elem_text(v: &Value) -> String {
    match v {
        Value::Number(n) => n.to_string(),
        Value::Array(_) => v.to_string(),
        other => panic!("not an element: {other}"),
    }
}

#[test]
fn klein_inv_example() {
    let v = json(&["inv", "--q", "7", "--group", "klein:1", "--tau", "[2]", "--method", "both"]);
    assert_eq!(v["regular"], true);
    assert_eq!(v["class_rep"].to_string(), "[[1,0],[0,1]]");
    assert_eq!(v["agree"], true);
}

#[test]
fn symbol_example() {
    assert_eq!(json(&["symbol", "--q", "3", "--tau", "[1]"])["ell"], 1);
}

#[test]
fn bijection_example() {
    let v = json(&["bijection", "--q", "5"]);
    let rows: Vec<(u64, u64)> =
        v.as_array().unwrap().iter().map(|r| (r["tau"].as_u64().unwrap(), r["order"].as_u64().unwrap())).collect();
    assert_eq!(rows, vec![(1, 3), (2, 4), (3, 6), (4, 5)]);
    assert_eq!(artin(&["bijection", "--q", "11"]).status.code(), Some(2));
}

#[test]
fn factor_shape_example() {
    let v = json(&["factor-shape", "--q", "3", "--matrix", "0,-1,1,0"]);
    assert_eq!(v.to_string(), r#"{"t":2,"count_t":2,"linear":0,"kappa":1,"verified":true}"#);
}

#[test]
fn split_and_reciprocity() {
    let v = json(&["split", "--q", "9", "--P", "3", "--coeffs", "[-1,1]"]);
    assert_eq!(v["splits"], true);
    assert_eq!(v["M"].to_string(), "[[1,0],[1,0]]");
    let v = json(&["split", "--q", "8", "--P", "2", "--coeffs", "[1,0,1]"]);
    assert_eq!(v["splits"], false);
    assert!(v["M"].is_null());
    let v = json(&["reciprocity", "--q", "9", "--basis", "[1]"]);
    assert_eq!(v["Q_Y"].to_string(), "[[1,0],[1,0]]");
}

#[test]
fn quotient_and_verification() {
    let v = json(&["quotient", "--q", "5", "--group", "g3"]);
    assert_eq!(v["num"].to_string(), "[1,2,0,1]");
    assert_eq!(v["den"].to_string(), "[0,4,1]");
    assert_eq!(v["irregular"].as_array().unwrap().len(), 2);
    let v = json(&["verify-quotient", "--q", "7", "--group", "kummer:3"]);
    assert_eq!(v["ok"], true);
    let v = json(&["verify-quotient", "--q", "7", "--group", "kummer:3", "--num", "[0,0,1]"]);
    assert_eq!(v["ok"], false);
    let v = json(&["relate", "--q", "7", "--group", "g3", "--over", "g6"]);
    assert_eq!(v["degree"], 2);
}

#[test]
fn census_counts_are_equal_for_cyclic_groups() {
    let v = json(&["census", "--q", "5", "--group", "g3"]);
    let counts: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["count"].as_u64().unwrap()).collect();
    assert_eq!(counts, vec![2, 2, 2]);
}

#[test]
fn outputs_round_trip_into_input_encodings() {
    let f9 = field_of_order(9).unwrap();
    let v = json(&["census", "--q", "9", "--group", "borel"]);
    for c in v["classes"].as_array().unwrap() {
        let m = c["class_rep"].to_string();
        assert!(Pgl2::parse(&f9, &m).is_ok(), "{m}");
        if c["order"] != 1 {
            assert_eq!(json(&["classify", "--q", "9", "--matrix", &m])["order"], c["order"]);
        }
    }
    let info = json(&["field-info", "--q", "3^2"]);
    let g = elem_text(&info["primitive_element"]);
    assert!(json(&["symbol", "--q", "9", "--tau", &g])["ell"].as_u64().unwrap() < 3);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["census", "--q", "13", "--group", "klein:2"];
    assert_eq!(artin(&args).stdout, artin(&args).stdout);
    let args = ["orbits", "--q", "8", "--group", "pgl2", "--format", "text"];
    assert_eq!(artin(&args).stdout, artin(&args).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(artin(&["inv", "--q", "6", "--group", "g3", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(artin(&["inv", "--q", "7", "--group", "nope", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(artin(&["classify", "--q", "5", "--matrix", "1,2,2,4"]).status.code(), Some(2));
    assert_eq!(artin(&["check", "13"]).status.code(), Some(2));
    assert_eq!(artin(&["field-info"]).status.code(), Some(2));
}

#[test]
fn check_suite_by_name() {
    let out = artin(&["check", "klein-theorem", "--qmax", "13", "--format", "text"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("criterion  5 PASS Klein theorem"));
}

#[test]
fn check_all_qmax_9() {
    let v = json(&["check", "all", "--qmax", "9"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 11);
}
