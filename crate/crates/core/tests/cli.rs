//! The command-line front end and report format.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ppwave-check")).args(args).output().unwrap()
}

fn run_config(name: &str, extra: &[&str]) -> Output {
    let path = config(name);
    let mut args = vec!["run", "--config", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    cli(&args)
}

#[test]
fn vacuum_wave_text_report_matches_golden_file() {
    let out = run_config("vacuum_wave.json", &["--format", "text", "--threads", "2"]);
    assert!(out.status.success());
    let golden = include_str!("golden/vacuum_wave.txt");
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn exact_reports_have_no_float_residuals() {
    let out = run_config("flagship_galaev.json", &[]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5 * 19);
    for row in rows {
        let res = row["residual"].as_str().expect("exact residual serialized as a string");
        assert!(res == "0" || res.contains('/'), "{res}");
        if let Some(Value::Object(subs)) = row["witnesses"].get("sub_residuals") {
            assert!(subs.values().all(Value::is_string), "{subs:?}");
        }
    }
    assert_eq!(v["header"]["mode"], "exact");
    assert_eq!(v["header"]["jet_order"], 4);
    assert_eq!(v["header"]["seed"], 0);
    assert_eq!(v["header"]["metric_echo"]["family"], "galaev");
    assert_eq!(v["summary"]["conformal_recurrence"]["pass"], 5);
}

#[test]
fn flagship_alpha_witness_at_u_equal_one() {
    let out = run_config("flagship_galaev.json", &[]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check"] == "conformal_recurrence" && r["point"][0] == "1/1")
        .unwrap();
    assert_eq!(row["witnesses"]["alpha"][0], "1/1");
    assert_eq!(row["witnesses"]["alpha"][1], "0");
}

#[test]
fn float_reports_use_json_numbers() {
    let out = run_config("generic_float.json", &[]);
    // conformal_recurrence and schimming fail on the generic metric
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["residual"].is_number()));
    // rejected candidates are listed with a reason and never appear as rows
    for rej in v["header"]["rejected"].as_array().unwrap() {
        assert!(rej["reason"].as_str().unwrap().contains("Lorentzian"));
        assert!(v["rows"].as_array().unwrap().iter().all(|r| r["point"] != rej["point"]));
    }
}

#[test]
fn walker_run_fails_with_exit_code_one() {
    let out = run_config("walker.json", &["--format", "text"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("overall: fail"));
}

#[test]
fn budget_violation_is_reported_before_running() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k3.json");
    std::fs::write(
        &path,
        r#"{"family": "ppwave", "d": 2, "params": {"H": "x1^2"}, "jet_order": 3, "checks": ["laplacians"]}"#,
    )
    .unwrap();
    let out = cli(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("jet order 4 required"));
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_config_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"family": "galaev", "d": 3, "params": {"F": "u", "lambda": ["1", "1", "1"]}}"#).unwrap();
    let out = cli(&["run", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("lambda sum must be zero"));

    let out = cli(&["run", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("/nonexistent/config.json"));
}

#[test]
fn theorem_command() {
    let path = config("flagship_galaev.json");
    let out = cli(&["theorems", "--name", "thm_3_13", "--config", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["header"]["suite"], "thm_3_13");
    assert_eq!(v["summary"]["thm_3_13"]["pass"], 5);

    let path = config("generic_float.json");
    let out = cli(&["theorems", "--name", "thm_3_8", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stdout).unwrap().contains("hypotheses_not_met"));
}

#[test]
fn families_list() {
    let out = cli(&["families", "--list"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for name in ["ppwave", "brinkmann", "walker", "galaev", "two_symmetric", "custom"] {
        assert!(text.lines().any(|l| l == name), "{name}");
    }
}
