//! End-to-end runs of the `hyperwedge` binary.

use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperwedge"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Vec<serde_json::Value> {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON array")
}

#[test]
fn eval_q_at_order_zero() {
    let out = run(&["eval-q", "--nu", "0", "--mu", "0", "--z", "2"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert_eq!(rows.len(), 1);
    // Q_0(2) = artanh(1/2)
    let v = rows[0]["value_re"].as_f64().unwrap();
    assert!((v - 0.5f64.atanh()).abs() < 1e-15, "{v}");
    assert!(rows[0]["err_est"].is_null());
}

#[test]
fn complex_parameters_and_csv() {
    let out = run(&["--format", "csv", "eval-p", "--nu", "-0.5+2i", "--mu", "0.25", "--z", "1.5"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("nu_re,nu_im,mu_re,mu_im,z_re,z_im,value_re,value_im"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0].parse::<f64>().unwrap(), -0.5);
    assert_eq!(row[1].parse::<f64>().unwrap(), 2.0);
    assert!(lines.next().is_none());
}

#[test]
fn grid_sweep_keeps_order() {
    let out = run(&["--grid", "axis=z,from=1.5,to=3,count=4", "eval-q", "--nu", "0", "--mu", "0"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    let zs: Vec<f64> = rows.iter().map(|r| r["z_re"].as_f64().unwrap()).collect();
    assert_eq!(zs, vec![1.5, 2.0, 2.5, 3.0]);
    for r in &rows {
        let z = r["z_re"].as_f64().unwrap();
        assert!((r["value_re"].as_f64().unwrap() - (1.0 / z).atanh()).abs() < 1e-14);
    }
}

#[test]
fn verify_reciprocal_kernel_passes() {
    let out = run(&["verify", "--kernel", "reciprocal", "--nu", "0.5", "--z", "2", "--omega", "1.5"], &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = json(&out);
    assert_eq!(rows[0]["pass"], serde_json::Value::Bool(true));
}

#[test]
fn output_is_deterministic() {
    let args = ["green-plane", "--s", "1.5", "--d", "0.7"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn suite_reports_checks() {
    let out = run(&["suite", "--name", "identities"], &[]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out);
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r["suite"] == "identities" && r["status"] == "pass"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["eval-q", "--nu", "0", "--mu", "0", "--z", "2"], &[("HYPERWEDGE_BOGUS", "1")]).status.code(), Some(2));
    assert_eq!(run(&["eval-q", "--nu", "zero", "--mu", "0", "--z", "2"], &[]).status.code(), Some(2));
    assert_eq!(run(&["suite", "--name", "nonexistent"], &[]).status.code(), Some(2));
    assert_eq!(run(&["--no-such-flag"], &[]).status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("hyperwedge-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.json");
    std::fs::write(&path, r#"{"command": "eval-q", "parameters": {"nu": 0, "mu": 0, "z": 2}, "bogus": 1}"#).unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap()], &[]).status.code(), Some(2));
    std::fs::write(&path, r#"{"command": "eval-q", "parameters": {"nu": 0, "mu": 0, "z": 2}}"#).unwrap();
    assert_eq!(run(&["--config", path.to_str().unwrap()], &[]).status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn numeric_failures_exit_with_three() {
    let out = run(&["eval-q", "--nu", "0", "--mu", "0", "--z", "0.5"], &[]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("legendre_q"));
}

#[test]
fn environment_overrides_tolerances() {
    let out = run(&["eval-q", "--nu", "0", "--mu", "0", "--z", "2"], &[("HYPERWEDGE_REL_TOL", "not-a-number")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["eval-q", "--nu", "0", "--mu", "0", "--z", "2"], &[("HYPERWEDGE_REL_TOL", "1e-8")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn help_goes_to_stdout() {
    let out = run(&["--help"], &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage: hyperwedge"));
}
