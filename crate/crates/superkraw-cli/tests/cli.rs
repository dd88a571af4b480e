//! End-to-end tests of the binary: exit codes, output determinism, and
//! JSON/CSV payload agreement.

use std::path::PathBuf;
use std::process::{Command, Output};

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superkraw"))
}

fn run(args: &[&str]) -> Output {
    binary().args(args).output().expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("superkraw-test-{}-{name}", std::process::id()));
    path
}

const BINARY_PARAMS: &str = r#"{
    "even": {"p": [0.5, 0.5], "p_tilde": [0.5, 0.5], "U": [[1, 1], [1, -1]]},
    "odd": {"q": [0.5, 0.5], "q_tilde": [0.5, 0.5], "V": [[1, 1], [1, -1]]}
}"#;

const BAD_PARAMS: &str = r#"{
    "even": {"p": [0.5, 0.5], "p_tilde": [0.5, 0.5], "U": [[1, 1], [1, 1]]},
    "odd": {"q": [0.5, 0.5], "q_tilde": [0.5, 0.5], "V": [[1, 1], [1, -1]]}
}"#;

fn write_params(name: &str, text: &str) -> PathBuf {
    let path = temp_path(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn verify_all_on_binary_params_exits_zero() {
    let path = write_params("binary.json", BINARY_PARAMS);
    let out = run(&[
        "--params",
        path.to_str().unwrap(),
        "--degree",
        "2",
        "verify",
        "--suite",
        "all",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["pass"], serde_json::json!(true));
    for suite in value["suites"].as_array().unwrap() {
        assert!(suite["max_residual"].as_f64().unwrap() <= 1e-9);
    }
}

#[test]
fn validate_rejects_inadmissible_tuple() {
    let path = write_params("bad.json", BAD_PARAMS);
    let out = run(&["--params", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["pass"], serde_json::json!(false));
    // The admissibility residual 1/2 is reported, not swallowed.
    let found = value["checks"].as_array().unwrap().iter().any(|c| {
        c["name"] == "even.admissibility"
            && (c["residual"].as_f64().unwrap() - 0.5).abs() < 1e-12
    });
    assert!(found, "{value}");
}

#[test]
fn validate_passes_good_params() {
    let path = write_params("good.json", BINARY_PARAMS);
    let out = run(&["--params", path.to_str().unwrap(), "validate"]);
    assert!(out.status.success());
}

#[test]
fn fock_full_occupation_is_certain() {
    let path = write_params("fock.json", BINARY_PARAMS);
    let out = run(&[
        "--params",
        path.to_str().unwrap(),
        "fock",
        "--odd-degree",
        "2",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let table = value["table"].as_array().unwrap();
    assert_eq!(table.len(), 1);
    assert!((table[0]["prob"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
}

#[test]
fn fock_sampling_is_deterministic() {
    let path = write_params("sampling.json", BINARY_PARAMS);
    let args = [
        "--params",
        path.to_str().unwrap(),
        "--seed",
        "9",
        "--samples",
        "1000",
        "fock",
        "--odd-degree",
        "1",
    ];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let value: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let total: u64 = value["samples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["count"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 1000);
}

#[test]
fn eval_csv_and_json_payloads_agree() {
    let path = write_params("eval.json", BINARY_PARAMS);
    let json_out = run(&[
        "--params",
        path.to_str().unwrap(),
        "--degree",
        "2",
        "eval",
    ]);
    let csv_out = run(&[
        "--params",
        path.to_str().unwrap(),
        "--degree",
        "2",
        "--format",
        "csv",
        "eval",
    ]);
    assert!(json_out.status.success() && csv_out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let rows = value["rows"].as_array().unwrap();
    let csv_text = String::from_utf8(csv_out.stdout).unwrap();
    let csv_lines: Vec<&str> = csv_text.lines().skip(1).collect();
    assert_eq!(rows.len(), csv_lines.len());
    for (row, line) in rows.iter().zip(csv_lines) {
        let fields: Vec<&str> = line.split(',').collect();
        let re: f64 = fields[4].parse().unwrap();
        let im: f64 = fields[5].parse().unwrap();
        assert_eq!(re, row["value"][0].as_f64().unwrap());
        assert_eq!(im, row["value"][1].as_f64().unwrap());
    }
}

#[test]
fn gen_params_round_trips_through_validate() {
    let path = temp_path("generated.json");
    let out = run(&[
        "--gen",
        "2",
        "2",
        "42",
        "--out",
        path.to_str().unwrap(),
        "gen-params",
    ]);
    assert!(out.status.success());
    let check = run(&["--params", path.to_str().unwrap(), "validate"]);
    assert!(check.status.success());
    // Same seed regenerates the identical file.
    let path2 = temp_path("generated2.json");
    let out2 = run(&[
        "--gen",
        "2",
        "2",
        "42",
        "--out",
        path2.to_str().unwrap(),
        "gen-params",
    ]);
    assert!(out2.status.success());
    assert_eq!(
        std::fs::read(&path).unwrap(),
        std::fs::read(&path2).unwrap()
    );
}

#[test]
fn transition_reports_round_trip_residual() {
    let out = run(&["--gen", "1", "1", "3", "--degree", "2", "transition"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(value["round_trip_residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn missing_parameter_source_is_a_usage_error() {
    let out = run(&["eval"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unreadable_file_is_a_usage_error() {
    let out = run(&["--params", "/nonexistent/params.json", "validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_file_is_a_usage_error() {
    let path = write_params("malformed.json", "{ not json");
    let out = run(&["--params", path.to_str().unwrap(), "validate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["--gen", "1", "1", "1", "verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}
