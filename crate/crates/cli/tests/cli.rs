use std::process::{Command, Output};

use hypereuler::coeff_engine::{a_table, TableJson};
use hypereuler::conjecture_lab::ReportJson;
use hypereuler::eulersum_algebra::{EulerSumExpr, ExprJson};
use hypereuler::numerics::VerifyJson;
use hypereuler::{decompose, CoeffTable, Route};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypereuler"))
        .args(args)
        .env_remove("HYPEREULER_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn bernoulli_text_and_json() {
    assert_eq!(stdout(&["bernoulli", "4"]), "1, 1/2, 1/6, 0, -1/30");
    assert_eq!(stdout(&["bernoulli", "0", "--format", "json"]), r#"[{"n":0,"value":"1"}]"#);
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--format", "json", "bernoulli", "6"])).unwrap();
    assert_eq!(v[6]["value"], "1/42");
    assert_eq!(v.as_array().unwrap().len(), 7);
}

#[test]
fn negative_argument_is_usage_error() {
    let out = run(&["bernoulli", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["hh", "0", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hh_value() {
    assert_eq!(stdout(&["hh", "2", "2", "2"]), "9/4");
    assert_eq!(stdout(&["hh", "1", "3", "2"]), "7/2");
    assert_eq!(stdout(&["hh", "1", "1", "0"]), "0");
    let v: serde_json::Value = serde_json::from_str(&stdout(&["hh", "1", "2", "3", "--format", "json"])).unwrap();
    assert_eq!(v["value"], "13/3");
}

#[test]
fn decompose_text_json_latex() {
    assert_eq!(stdout(&["decompose", "2", "2", "4"]), "S(2,4) + S(2,3) - S(1,4)");
    let json: ExprJson = serde_json::from_str(&stdout(&["decompose", "2", "2", "4", "--format", "json"])).unwrap();
    let back = EulerSumExpr::from_json(&json).unwrap();
    assert_eq!(back, decompose(2, 2, 4).unwrap());
    let tex = stdout(&["decompose", "2", "2", "4", "--format", "latex"]);
    assert!(tex.contains("S^{+,+}_{2,4}"), "{tex}");
}

#[test]
fn decompose_reduced_classical_case() {
    assert_eq!(
        stdout(&["decompose", "1", "1", "3", "--reduce-s1"]),
        "5/2*zeta(4) - 1/2*zeta(2)^2"
    );
}

#[test]
fn decompose_hypothesis_violation_exits_nonzero() {
    let out = run(&["decompose", "1", "3", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("m >= r+1"));
}

#[test]
fn coeffs_routes() {
    let text = stdout(&["coeffs", "2"]);
    assert_eq!(text, "a(2,1,0) = -1\na(2,0,0) = 1, a(2,0,1) = 1");
    let both = stdout(&["coeffs", "6", "--route", "both"]);
    assert!(both.ends_with("MATCH"), "{both}");
    let json: TableJson = serde_json::from_str(&stdout(&["coeffs", "4", "--format", "json", "--route", "b"])).unwrap();
    let table = CoeffTable::from_json(&json, Route::B).unwrap();
    assert!(table.same_entries(&a_table(4).unwrap()));
}

#[test]
fn verify_pass_and_json() {
    let text = stdout(&["verify", "1", "1", "2"]);
    assert!(text.ends_with("PASS"), "{text}");
    let json: VerifyJson =
        serde_json::from_str(&stdout(&["verify", "2", "2", "4", "--digits", "12", "--format", "json"])).unwrap();
    assert!(json.pass);
    assert!(json.direct.value.starts_with("1.23808568205"), "{}", json.direct.value);
}

#[test]
fn digits_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hypereuler"))
        .args(["verify", "1", "1", "2", "--format", "json"])
        .env("HYPEREULER_DIGITS", "4")
        .output()
        .unwrap();
    assert!(out.status.success());
    let json: VerifyJson = serde_json::from_slice(&out.stdout).unwrap();
    let short: VerifyJson = serde_json::from_str(&stdout(&["verify", "1", "1", "2", "--format", "json"])).unwrap();
    assert!(json.direct.value.len() < short.direct.value.len());
}

#[test]
fn verify_iteration_cap_is_error() {
    let out = run(&["verify", "1", "1", "2", "--tail", "comparison", "--max-terms", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn conjectures_report() {
    let text = stdout(&["conjectures", "8"]);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.contains("holds for r = 1..8")), "{text}");
    let reports: Vec<ReportJson> = serde_json::from_str(&stdout(&["conjectures", "5", "--format", "json"])).unwrap();
    assert_eq!(reports.len(), 4);
    assert!(reports.iter().all(|r| r.all_pass && r.r_checked == vec![1, 2, 3, 4, 5]));
    assert!(reports[3].min_abs_entries.is_some());
}
