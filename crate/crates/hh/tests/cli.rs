use std::path::Path;
use std::process::{Command, Output};

fn hh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn passing_suite_exits_zero() {
    let o = hh(&["verify", "projections", "--n", "1", "--N", "8", "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("pass")));
}

#[test]
fn unknown_suite_and_target_are_errors() {
    let o = hh(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
    let o = hh(&["emit", "no-such-target"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn infeasible_config_is_rejected_before_running() {
    let o = hh(&["verify", "plancherel", "--N", "4", "--kmax", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
    let o = hh(&["verify", "fock-basics", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_check_gives_exit_one() {
    // λ = 2 pushes the kernel series past the q ≤ 12 truncation budget
    let o = hh(&["verify", "kernels-and-surface", "--lambda", "2", "--kmax", "1"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL  q-versus-series"));
}

#[test]
fn empty_interior_is_skipped() {
    let o = hh(&["verify", "fock-basics", "--n", "1", "--N", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("skip  ladder-commutators"));
    assert!(out.contains("interior empty"));
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn reports_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = hh(&["verify", "plancherel", "--n", "1", "--seed", "5", "--out", d.path().to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(read(a.path(), "plancherel.jsonl"), read(b.path(), "plancherel.jsonl"));
    let text = String::from_utf8(read(a.path(), "plancherel.jsonl")).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v["anchor"].is_string());
    }
    assert!(a.path().join("plancherel.timings.jsonl").exists());
}

#[test]
fn larger_truncation_keeps_passing() {
    for n in ["8", "10"] {
        let o = hh(&["verify", "invariant-ops", "--n", "1", "--N", n, "--mode", "exact"]);
        assert_eq!(o.status.code(), Some(0), "N={n}: {}", stdout(&o));
    }
}

#[test]
fn emitted_files() {
    let d = tempfile::tempdir().unwrap();
    let dir = d.path().to_str().unwrap();
    for t in ["profile", "matrix", "table"] {
        assert_eq!(hh(&["emit", t, "--out", dir]).status.code(), Some(0));
    }

    let mut rdr = csv::Reader::from_path(d.path().join("psi_profile.csv")).unwrap();
    let rows: Vec<(f64, f64, f64)> = rdr.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 81);
    for (r, re, im) in rows {
        // ψ₂ for n = 1, λ = 1: (2/π) L₂(2r²) e^{−r²}, L₂(x) = 1 − 2x + x²/2
        let x = 2.0 * r * r;
        let expect = 2.0 / std::f64::consts::PI * (1.0 - 2.0 * x + x * x / 2.0) * (-r * r).exp();
        assert!((re - expect).abs() < 1e-12 && im.abs() < 1e-12, "r={r}");
    }

    let m: serde_json::Value = serde_json::from_slice(&read(d.path(), "weyl_psi.json")).unwrap();
    let entries = m["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["row"], serde_json::json!([1]));
    assert_eq!(entries[0]["col"], serde_json::json!([1]));

    let t: serde_json::Value = serde_json::from_slice(&read(d.path(), "hecke_bochner_table.json")).unwrap();
    let rows = t["rows"].as_array().unwrap();
    assert_eq!(rows[0]["c"], "pi/2");
    assert!(rows[1..].iter().all(|r| r["c"] == "0"));

    let again = tempfile::tempdir().unwrap();
    hh(&["emit", "table", "--out", again.path().to_str().unwrap()]);
    assert_eq!(read(d.path(), "hecke_bochner_table.json"), read(again.path(), "hecke_bochner_table.json"));
}

#[test]
fn degree_cap_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_hh"))
        .args(["verify", "plancherel"])
        .env("HH_MAX_DEGREE", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap 4"));
}
