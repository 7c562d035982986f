use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const BIN: &str = env!("CARGO_BIN_EXE_resonance-sizer");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn write_config(dir: &TempDir, name: &str, json: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    path
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

const PAIR: &str = r#"{
  "centers": [[0,0,0],[1,0,0]],
  "strengths": [[0,0],[0,0]],
  "counting": {"r_min": 20, "r_max": 200, "steps": 10},
  "region": {"re_min": 0, "re_max": 20, "im_min": -5, "im_max": 0}
}"#;

#[test]
fn expand_pair_frequencies() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let v = stdout_json(&run(&["expand", "--config", arg(&cfg)]));
    assert_eq!(v["frequencies"], serde_json::json!([0.0, 2.0]));
    assert_eq!(v["b_nu"], 2.0);
    // −z² at frequency 0, −1 at frequency 2
    assert_eq!(v["canonical_form"][0]["coefficients"][2][0], -1.0);
    assert_eq!(v["canonical_form"][1]["coefficients"][0][0], -1.0);
    assert!(v["cancellation"]["groups"].is_array());
}

#[test]
fn expand_csv_writes_two_files() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let out = run(&["expand", "--config", arg(&cfg), "--csv", "--out-dir", arg(dir.path())]);
    assert!(out.status.success());
    let freqs = std::fs::read_to_string(dir.path().join("frequencies.csv")).unwrap();
    let coeffs = std::fs::read_to_string(dir.path().join("coefficients.csv")).unwrap();
    assert_eq!(freqs, "frequency,degree\n0.0,2\n2.0,0\n");
    assert!(coeffs.starts_with("frequency,power,re,im\n"));
    assert_eq!(coeffs.lines().count(), 1 + 3 + 1);
}

#[test]
fn missing_strengths_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "bad.json", r#"{"centers": [[0,0,0],[1,0,0]]}"#);
    let out = run(&["expand", "--config", arg(&cfg)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn malformed_json_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "bad.json", "{\"centers\": [[0,0,0]");
    assert_eq!(run(&["classify", "--config", arg(&cfg)]).status.code(), Some(2));
}

#[test]
fn coincident_centers_exit_2() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "bad.json",
        r#"{"centers": [[0,0,0],[0,0,0]], "strengths": [[0,0],[0,0]]}"#,
    );
    assert_eq!(run(&["validate", "--config", arg(&cfg)]).status.code(), Some(2));
}

#[test]
fn validate_ok() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let v = stdout_json(&run(&["validate", "--config", arg(&cfg)]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["min_distance"], 1.0);
}

#[test]
fn classify_pair_and_random_quad_are_weyl() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let v = stdout_json(&run(&["classify", "--config", arg(&cfg)]));
    assert_eq!(v["classification"], "Weyl");

    let quad = r#"{
      "centers": [[0.12,0.83,0.41],[0.77,0.05,0.36],[0.49,0.58,0.94],[0.91,0.67,0.13]],
      "strengths": [[0.3,-0.2],[-0.7,0.1],[0.05,0.9],[0.4,0.4]]
    }"#;
    let cfg = write_config(&dir, "quad.json", quad);
    let v = stdout_json(&run(&["classify", "--config", arg(&cfg)]));
    assert_eq!(v["classification"], "Weyl");
    assert_eq!(v["genericity"]["is_generic"], true);
}

#[test]
fn count_pair_slope_and_monotone() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let out = run(&["count", "--config", arg(&cfg)]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("R,count,winding_residual"));
    let rows: Vec<(f64, f64, f64)> = lines
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (f[0], f[1], f[2])
        })
        .collect();
    assert_eq!(rows.len(), 10);
    assert!(rows.windows(2).all(|w| w[0].1 <= w[1].1));
    assert!(rows.iter().all(|r| r.2 <= 1e-3));
    // fit on R ≥ 40
    let pts: Vec<(f64, f64)> = rows.iter().skip(1).map(|r| (r.0, r.1)).collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |s, p| (s.0 + p.0, s.1 + p.1));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = num / den;
    let expect = 2.0 / std::f64::consts::PI;
    assert!((slope - expect).abs() / expect < 0.03, "slope {slope}");
}

#[test]
fn count_below_first_resonance_is_zero() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "small.json",
        r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,0],[0,0]],
            "counting": {"r_min": 0.1, "r_max": 0.5, "steps": 3}}"#,
    );
    let out = run(&["count", "--config", arg(&cfg)]);
    let text = String::from_utf8(out.stdout).unwrap();
    for line in text.lines().skip(1) {
        assert_eq!(line.split(',').nth(1), Some("0"));
    }
}

#[test]
fn resonances_pair_residuals() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let v = stdout_json(&run(&["resonances", "--config", arg(&cfg)]));
    let list = v["resonances"].as_array().unwrap();
    assert_eq!(list.len() as u64, v["region_count"].as_u64().unwrap());
    assert!(!list.is_empty());
    for r in list {
        assert!(r["residual"].as_f64().unwrap() <= 1e-8);
        assert_eq!(r["cluster"], false);
    }
}

#[test]
fn resonances_p0_only() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "p0.json",
        r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,1],[0,2]],
            "region": {"re_min": 0, "re_max": 30, "im_min": -1, "im_max": 1}}"#,
    );
    let v = stdout_json(&run(&["resonances", "--config", arg(&cfg), "--p0-only"]));
    let list = v["resonances"].as_array().unwrap();
    assert_eq!(list.len(), 2);
    let pi = std::f64::consts::PI;
    for (r, expect) in list.iter().zip([4.0 * pi, 8.0 * pi]) {
        assert!((r["re"].as_f64().unwrap() - expect).abs() < 1e-10);
        assert!(r["im"].as_f64().unwrap().abs() < 1e-10);
    }
}

#[test]
fn resonances_empty_region() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(
        &dir,
        "empty.json",
        r#"{"centers": [[0,0,0],[1,0,0]], "strengths": [[0,0],[0,0]],
            "region": {"re_min": 1, "re_max": 1, "im_min": -1, "im_max": 0}}"#,
    );
    let v = stdout_json(&run(&["resonances", "--config", arg(&cfg)]));
    assert_eq!(v["resonances"], serde_json::json!([]));
}

#[test]
fn scan_is_reproducible() {
    let a = stdout_json(&run(&["scan", "--n", "3", "--trials", "200", "--seed", "11"]));
    let b = stdout_json(&run(&["scan", "--n", "3", "--trials", "200", "--seed", "11"]));
    assert_eq!(a, b);
    assert_eq!(a["generic_fraction"], 1.0);
    assert_eq!(a["weyl_fraction"], 1.0);
}

#[test]
fn scan_zero_trials_and_bad_n() {
    let v = stdout_json(&run(&["scan", "--n", "3", "--trials", "0"]));
    assert_eq!(v["trials"], 0);
    assert!(v["generic_fraction"].is_null());
    assert_eq!(run(&["scan", "--n", "1"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--n", "11"]).status.code(), Some(2));
}

#[test]
fn output_round_trips_through_core_types() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(&dir, "pair.json", PAIR);
    let v = stdout_json(&run(&["expand", "--config", arg(&cfg)]));
    let e: resonance_core::expoly::ExpoPolynomial =
        serde_json::from_value(v["canonical_form"].clone()).unwrap();
    assert_eq!(e.frequencies(), vec![0.0, 2.0]);
}
