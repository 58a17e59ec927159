//! The binary's exit-code contract, outputs and reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn stripgibbs(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stripgibbs"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, json: &str) -> PathBuf {
    let p = dir.join("config.json");
    fs::write(&p, json).unwrap();
    p
}

#[test]
fn malformed_config_exits_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = stripgibbs(
        &[
            "mpa-check",
            "--config",
            fixture("malformed.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn unknown_field_and_bad_parameters_are_config_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"algebra": {"trunk_k": 60}}"#);
    assert_eq!(
        stripgibbs(
            &["mpa-check", "--config", cfg.to_str().unwrap()],
            dir.path()
        )
        .status
        .code(),
        Some(3)
    );
    let cfg = write_config(
        dir.path(),
        r#"{"params": {"model": "geometric-lpp", "bulk": [1.5], "left": 0.5, "right": 0.5}}"#,
    );
    assert_eq!(
        stripgibbs(&["simulate", "--config", cfg.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(3)
    );
    let missing = dir.path().join("missing.json");
    assert_eq!(
        stripgibbs(
            &["simulate", "--config", missing.to_str().unwrap()],
            dir.path()
        )
        .status
        .code(),
        Some(3)
    );
}

#[test]
fn usage_errors_and_help() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        stripgibbs(&["no-such-command"], dir.path()).status.code(),
        Some(3)
    );
    assert_eq!(
        stripgibbs(&["simulate", "--seed", "minus-one"], dir.path())
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        stripgibbs(&["simulate", "--threads", "0"], dir.path())
            .status
            .code(),
        Some(3)
    );
    assert_eq!(stripgibbs(&["--help"], dir.path()).status.code(), Some(0));
}

#[test]
fn corrupted_exponent_fails_and_names_the_relation() {
    let dir = tempfile::tempdir().unwrap();
    let o = stripgibbs(
        &[
            "verify-identities",
            "--config",
            fixture("corrupted_cauchy.json").to_str().unwrap(),
        ],
        dir.path(),
    );
    let stderr = String::from_utf8_lossy(&o.stderr);
    assert_eq!(o.status.code(), Some(2), "{stderr}");
    assert!(
        stderr.contains("skew Cauchy identity (geometric)"),
        "{stderr}"
    );
    assert!(!stderr.contains("Littlewood"), "{stderr}");
    let report: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(dir.path().join("verify-identities.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(report["passed"], false);
    assert_eq!(report["config"]["fault"], "cauchy-exponent");
}

#[test]
fn report_config_reproduces_the_report() {
    let first = tempfile::tempdir().unwrap();
    let cfg = write_config(first.path(), r#"{"mode": "stationary", "samples": 3000}"#);
    let o = stripgibbs(
        &[
            "simulate",
            "--config",
            cfg.to_str().unwrap(),
            "--seed",
            "99",
            "--threads",
            "1",
        ],
        first.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    let report = fs::read_to_string(first.path().join("simulate.json")).unwrap();
    let value: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(value["seed"], 99);
    assert_eq!(value["config"]["run"]["seed"], 99);

    let second = tempfile::tempdir().unwrap();
    let replay = write_config(second.path(), &value["config"].to_string());
    let o = stripgibbs(
        &["simulate", "--config", replay.to_str().unwrap()],
        second.path(),
    );
    assert_eq!(o.status.code(), Some(0));
    for file in [
        "simulate.json",
        "simulate_checks.csv",
        "simulate_samples.csv",
    ] {
        let a = fs::read(first.path().join(file)).unwrap();
        let b = fs::read(second.path().join(file)).unwrap();
        assert!(a == b, "{file} differs on replay");
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = write_config(
        a.path(),
        r#"{"mode": "stationary", "samples": 5000, "params": {"model": "log-gamma", "bulk": [1.0, 1.0], "left": -0.3, "right": 0.2}}"#,
    );
    let c = cfg.to_str().unwrap();
    assert_eq!(
        stripgibbs(&["simulate", "--config", c, "--threads", "1"], a.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        stripgibbs(&["simulate", "--config", c, "--threads", "3"], b.path())
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        fs::read(a.path().join("simulate_samples.csv")).unwrap(),
        fs::read(b.path().join("simulate_samples.csv")).unwrap()
    );
}

#[test]
fn single_spacing_is_report_only() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"cases": [{"u": 1.0, "v": 1.0}], "epsilons": [0.2], "samples": 2000, "grid_m": 64, "n_boot": 20}"#,
    );
    let o = stripgibbs(
        &["kpz-limit", "--config", cfg.to_str().unwrap()],
        dir.path(),
    );
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let table = fs::read_to_string(dir.path().join("kpz-limit_convergence.csv")).unwrap();
    assert_eq!(table.lines().count(), 2);
    assert!(table.starts_with("case,epsilon,n_steps,"));
}

#[test]
fn dynamics_trajectory_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        r#"{"mode": "dynamics", "steps": 25, "init": [3, 6, 9, 12]}"#,
    );
    assert_eq!(
        stripgibbs(&["simulate", "--config", cfg.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(0)
    );
    let csv = fs::read_to_string(dir.path().join("simulate_trajectory.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("step,h1,h2,h3,h4"));
    assert_eq!(lines.next(), Some("0,3e0,6e0,9e0,1.2e1"));
    assert_eq!(lines.count(), 25);
}

#[test]
fn mpa_check_passes_by_default() {
    let dir = tempfile::tempdir().unwrap();
    let o = stripgibbs(&["mpa-check"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&o.stdout);
    assert!(stdout.contains("PASS mpa relation bulk"));
    assert!(!stdout.contains("FAIL"));
}
