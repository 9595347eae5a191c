//! End-to-end tests of the `or-lab` binary: output schemas, exit codes, and
//! the byte-determinism contract.

use std::process::{Command, Output};

fn or_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_or-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn classify_triple_point() {
    let out = or_lab(&["classify", "--n", "4", "--k", "2", "--w1", "0", "--w2", "0"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["dimension"], 3);
    assert_eq!(value["case"], "triple-exception");
}

#[test]
fn coeffs_json_and_csv_share_rational_strings() {
    let base = [
        "coeffs", "--n", "5", "--k", "1", "--w1", "-1", "--w2", "-1",
    ];
    let json_out = or_lab(&[&base[..], &["--format", "json"]].concat());
    assert!(json_out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&json_out)).unwrap();
    assert_eq!(value["dimension"], 1);
    let entries = value["basis"][0]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    for e in entries {
        assert_eq!(e[2], "1/4");
    }

    let csv_out = or_lab(&[&base[..], &["--format", "csv"]].concat());
    assert!(csv_out.status.success());
    let csv = stdout(&csv_out);
    assert!(csv.starts_with("# basis 1 normalization=paper-gamma\ns,t,value\n"));
    assert_eq!(csv.matches("1/4").count(), 3);
}

#[test]
fn eval_applies_the_operator() {
    let dir = std::env::temp_dir().join("or-lab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let u_path = dir.join("u.json");
    let v_path = dir.join("v.json");
    std::fs::write(
        &u_path,
        r#"{"n": 5, "components": [{"degree": 1, "poly": {"1,0,0,0,0,0": "1"}}]}"#,
    )
    .unwrap();
    std::fs::write(
        &v_path,
        r#"{"n": 5, "components": [{"degree": 0, "poly": {"0,0,0,0,0,0": "1"}}]}"#,
    )
    .unwrap();
    let args = [
        "eval", "--n", "5", "--k", "1", "--w1", "-1", "--w2", "-1",
        "--u", u_path.to_str().unwrap(), "--v", v_path.to_str().unwrap(),
    ];
    let spectral = or_lab(&args);
    assert!(spectral.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&spectral)).unwrap();
    assert_eq!(value["components"][0]["poly"]["1,0,0,0,0,0"], "-5");

    let ambient = or_lab(&[&args[..], &["--engine", "ambient"]].concat());
    assert_eq!(stdout(&spectral), stdout(&ambient));
}

#[test]
fn verify_exit_codes_and_determinism() {
    let args = [
        "verify", "--suite", "commutator", "--n", "5", "--k", "1", "--degree", "2",
    ];
    let first = or_lab(&args);
    assert!(first.status.success(), "commutator suite should pass");
    let report: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(report["suite"], "commutator");
    assert_eq!(report["passed"], true);

    let second = or_lab(&args);
    assert_eq!(stdout(&first), stdout(&second), "output must be byte-identical");
}

#[test]
fn verify_seeded_suite_deterministic() {
    let args = [
        "verify", "--suite", "self-adjointness", "--n", "5", "--k", "1",
        "--w1", "-1", "--w2", "-1", "--trials", "5", "--degree", "2", "--seed", "7",
    ];
    let first = or_lab(&args);
    assert!(first.status.success());
    let second = or_lab(&args);
    assert_eq!(stdout(&first), stdout(&second));
}

#[test]
fn usage_errors_exit_two() {
    // Unknown flag.
    let out = or_lab(&["classify", "--n", "4", "--k", "2", "--w1", "0", "--w2", "0", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // Malformed rational.
    let out = or_lab(&["classify", "--n", "4", "--k", "2", "--w1", "0.5", "--w2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8(out.stderr).unwrap().is_empty());
    // Gated exploratory suite.
    let out = or_lab(&[
        "verify", "--suite", "self-adjointness", "--n", "9", "--k", "4",
        "--w1", "-1/3", "--w2", "-1/3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    // Missing required weight for a suite.
    let out = or_lab(&["verify", "--suite", "linear-fsa", "--n", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = [
        "verify", "--suite", "cross-agreement", "--n", "4", "--k", "1",
        "--w1", "-1/3", "--w2", "-1/3", "--degree", "2",
    ];
    let parallel = or_lab(&args);
    assert!(parallel.status.success());
    let capped = Command::new(env!("CARGO_BIN_EXE_or-lab"))
        .args(args)
        .env("OR_LAB_THREADS", "1")
        .output()
        .unwrap();
    assert!(capped.status.success());
    assert_eq!(stdout(&parallel), stdout(&capped));
}
