//! Command-line contract: exit codes, output selection, config file
//! handling and plotting.

use std::process::Command;

fn exe() -> &'static str {
    env!("CARGO_BIN_EXE_verify")
}

#[test]
fn passing_suite_exits_zero() {
    let out = Command::new(exe())
        .args(["kummer", "--seed", "1", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("suite kummer [pass]"));
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = Command::new(exe()).arg("bogus").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_precision_is_usage_error() {
    let out = Command::new(exe())
        .args(["kummer", "--precision", "32"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_report_has_schema_version() {
    let out = Command::new(exe())
        .args(["kummer", "--seed", "4"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["config"]["seed"], 4);
}

#[test]
fn config_file_is_read_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"seed": 11, "format": "json"}"#).unwrap();
    let out = Command::new(exe())
        .args(["kummer", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 11);
    // explicit flag wins
    let out = Command::new(exe())
        .args(["kummer", "--seed", "5", "--config"])
        .arg(&cfg)
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 5);
}

#[test]
fn write_failure_is_io_error() {
    let out = Command::new(exe())
        .args(["kummer", "--out", "/nonexistent-dir/report.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn plot_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curves.svg");
    let out = Command::new(exe())
        .args(["plot", "--sextic", "-36,0,49,0,-14,0,1", "--curve", "both", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("conic") && svg.contains("sextic"));
}

#[test]
fn plot_without_sextic_is_usage_error() {
    let out = Command::new(exe()).arg("plot").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
