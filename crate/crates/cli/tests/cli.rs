use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_beurling"));
    for var in ["BEURLING_MODE", "BEURLING_TOL", "BEURLING_OUT_DIR", "BEURLING_SEED"] {
        c.env_remove(var);
    }
    c
}

fn spec(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs").join(name)
}

fn run_spec(name: &str, out: &Path, extra: &[&str]) -> Output {
    bin().arg("run").arg(spec(name)).arg("--out-dir").arg(out).args(extra).output().expect("binary runs")
}

fn report(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn ex_11_1_reports_fail_pass_fail() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec("ex_11_1.json", dir.path(), &[]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(dir.path());
    let b = &r["beurling"];
    assert_eq!(b["invariant"]["verdict"], "FAIL");
    assert_eq!(b["r1_inner"]["verdict"], "PASS");
    assert_eq!(b["full_projection"]["verdict"], "FAIL");
    assert_eq!(b["consistent"], true);
    assert!(dir.path().join("decomposition.csv").exists());
}

#[test]
fn ex_11_1_exact_mode_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec("ex_11_1.json", dir.path(), &["--mode", "exact"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(dir.path())["mode"], "exact");
}

#[test]
fn mode_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .env("BEURLING_MODE", "exact")
        .arg("run")
        .arg(spec("ex_11_1.json"))
        .arg("--out-dir")
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(dir.path())["mode"], "exact");
}

#[test]
fn ex_18_7_inner_and_boundary_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec("ex_18_7.json", dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(report(dir.path())["inner"][0]["verdict"], "PASS");
    let mut rdr = csv::Reader::from_path(dir.path().join("boundary_0.csv")).unwrap();
    let header = rdr.headers().unwrap().clone();
    assert_eq!(header.get(header.len() - 1), Some("abs_f"));
    let values: Vec<f64> = rdr.records().filter_map(|r| r.ok()?.get(header.len() - 1)?.parse().ok()).collect();
    assert!(values.iter().any(|v| (v - 2.0).abs() <= 1e-12));
    assert!(values.iter().any(|v| v.abs() <= 1e-12));
}

#[test]
fn submodule_reconstruction() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_spec("submodule.json", dir.path(), &[]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(dir.path());
    assert_eq!(r["status"], "all_pass");
    let rec = &r["reconstructions"][0];
    assert!(rec["final_residual"].as_f64().unwrap() <= 1e-9 * rec["rh_norm"].as_f64().unwrap());
}

#[test]
fn output_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run_spec("ex_18_7.json", a.path(), &["--seed", "7"]);
    run_spec("ex_18_7.json", b.path(), &["--seed", "7"]);
    for name in ["report.json", "boundary_0.csv", "boundary_1.csv"] {
        assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn parse_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"space": {"kind": "H2_POLYDISK", "n": 2}}"#).unwrap();
    let out = bin().arg("run").arg(&bad).arg("--out-dir").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(!dir.path().join("report.json").exists());
    let out = bin().arg("run").arg(dir.path().join("missing.json")).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_single_criterion_passes() {
    let out = bin().args(["selftest", "--only", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("criterion  1 [PASS]"));
}

#[test]
fn loose_tolerance_is_an_integrity_error() {
    let out = bin().env("BEURLING_TOL", "1e-1").args(["selftest", "--only", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}
