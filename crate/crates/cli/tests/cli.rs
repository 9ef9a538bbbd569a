use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hdrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hdrc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn points(curve: &Value) -> Vec<(f64, f64)> {
    curve["points"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["r"].as_f64().unwrap(), p["d"].as_f64().unwrap()))
        .collect()
}

#[test]
fn curve_json_schema_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = hdrc(&[
        "curve", "--m", "1", "--k", "2", "--n", "1", "--variants", "hd-dynamic,ddf-1k1", "--r", "0:1:0.05", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = read_json(&out);
    let curves = v.as_array().unwrap();
    assert_eq!(curves.len(), 2);
    assert_eq!(curves[0]["variant"], "hd-dynamic");
    assert_eq!(curves[1]["variant"], "ddf-1k1");
    assert_eq!(curves[0]["config"], serde_json::json!({"m": 1, "k": 2, "n": 1}));
    let pts = points(&curves[0]);
    assert_eq!(pts.len(), 21);
    assert!((pts[0].1 - 3.0).abs() < 1e-9);
}

#[test]
fn curve_csv_columns() {
    let o = hdrc(&["curve", "--m", "2", "--k", "1", "--n", "2", "--variants", "fd", "--r", "0,1,2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "r,d,variant,m,k,n");
    assert_eq!(lines[1], "0.0,6.0,fd,2,1,2");
    assert_eq!(lines.len(), 4);
    assert!(text.ends_with('\n'));
}

#[test]
fn hd_matches_fd_for_two_one_two() {
    let o = hdrc(&["curve", "--m", "2", "--k", "1", "--n", "2", "--variants", "hd-dynamic,fd"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (a, b) = (points(&v[0]), points(&v[1]));
    for (p, q) in a.iter().zip(&b) {
        assert!((p.1 - q.1).abs() <= 1e-3, "{p:?} vs {q:?}");
    }
}

#[test]
fn validation_failures_exit_two() {
    let cases: &[&[&str]] = &[
        &["curve", "--r", ""],
        &["curve", "--m", "0"],
        &["curve", "--variants", "nope"],
        &["curve", "--m", "2", "--k", "2", "--n", "2", "--variants", "closed-1k1"],
        &["curve", "--r", "0:2:0.5"],
        &["simulate", "--r", "0", "--samples", "1000"],
        &["simulate", "--r", "0.5", "--samples", "10"],
        &["compare", "--variants", "fd"],
        &["frobnicate"],
    ];
    for args in cases {
        assert_eq!(code(&hdrc(args)), 2, "{args:?}");
    }
}

#[test]
fn solver_refusal_exits_three_without_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("never.json");
    let o = hdrc(&[
        "curve", "--m", "3", "--k", "3", "--n", "3", "--variants", "grid-oracle", "--r", "1", "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    assert!(!out.exists());
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn compare_gaps() {
    let gap = |cfg: [&str; 3], variants: &str| {
        let o = hdrc(&["compare", "--m", cfg[0], "--k", cfg[1], "--n", cfg[2], "--variants", variants]);
        assert_eq!(code(&o), 0);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["gaps"][0]["max_gap"].as_f64().unwrap()
    };
    assert!(gap(["2", "3", "2"], "hd-dynamic,fd") > 0.0);
    assert!(gap(["3", "2", "2"], "hd-dynamic,fd") <= 1e-3);
    assert_eq!(gap(["1", "1", "1"], "hd-dynamic,hd-dynamic"), 0.0);
}

#[test]
fn simulate_is_reproducible_across_workers() {
    let run = |workers: &str| {
        let o = hdrc(&[
            "simulate", "--m", "1", "--k", "1", "--n", "1", "--r", "0.5", "--snr-db", "5:15:5", "--samples", "20000",
            "--seed", "7", "--workers", workers,
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert!((v["analytic_d"].as_f64().unwrap() - 1.0).abs() < 1e-9);
        v["estimates"].as_array().unwrap().iter().map(|e| e["p_out"].as_f64().unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(run("1"), run("3"));
}

#[test]
fn simulate_without_enough_events_exits_four() {
    let o = hdrc(&["simulate", "--m", "2", "--k", "2", "--n", "2", "--r", "0.2", "--snr-db", "30,40,50", "--samples", "1000"]);
    assert_eq!(code(&o), 4);
    assert!(o.stdout.is_empty());
}

#[test]
fn verify_default_passes() {
    let o = hdrc(&["verify"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn verify_fault_names_the_check() {
    let o = hdrc(&["verify", "--inject-fault", "phi"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL φ consistency"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("φ consistency"));
}

#[test]
fn verify_conjectures_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = hdrc(&["verify", "--conjectures", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = read_json(&out);
    let soft: Vec<&Value> = v.as_array().unwrap().iter().filter(|c| c["hard"] == false).collect();
    assert_eq!(soft.len(), 2);
    assert!(soft[0]["name"].as_str().unwrap().contains("symmetric"));
}
