use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn phasekit(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_phasekit"))
        .args(args)
        .current_dir(dir)
        .env_remove("PHASEKIT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn setup() -> TempDir {
    let dir = TempDir::new().unwrap();
    let s = 0.5f64.sqrt();
    fs::write(dir.path().join("zero.json"), r#"{"d": 3, "n": 1, "amplitudes": [[1, 0], [0, 0], [0, 0]]}"#).unwrap();
    fs::write(dir.path().join("plus.json"), format!(r#"{{"d": 3, "n": 1, "amplitudes": [[{s}, 0], [{s}, 0], [0, 0]]}}"#)).unwrap();
    fs::write(dir.path().join("even.json"), r#"{"d": 4, "n": 1, "amplitudes": [[1, 0], [0, 0], [0, 0], [0, 0]]}"#).unwrap();
    fs::write(dir.path().join("broken.json"), r#"{"d": 3, "n": 1, "amplitudes": [[1, 0]"#).unwrap();
    dir
}

#[test]
fn wigner_of_basis_state() {
    let dir = setup();
    let o = phasekit(&["wigner", "zero.json"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("p1,q1,value"));
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().filter(|l| l.ends_with(",0.3333333333333333")).count(), 3);
    assert_eq!(phasekit(&["wigner", "zero.json"], dir.path()).stdout, o.stdout);
}

#[test]
fn malformed_state_fails() {
    let dir = setup();
    let o = phasekit(&["wigner", "broken.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
}

#[test]
fn grid_round_trip() {
    let dir = setup();
    let o = phasekit(&["wigner", "plus.json", "--out", "grids", "--format", "pgm"], dir.path());
    assert!(o.status.success());
    assert!(dir.path().join("grids/plus.pgm").exists());
    let stats = json(&phasekit(&["wigner", "--from-grid", "grids/plus.csv"], dir.path()));
    let direct = json(&phasekit(&["wigner", "plus.json", "--format", "json"], dir.path()));
    assert_eq!(stats["min"], direct["min"]);
    assert_eq!(stats["sum"], direct["sum"]);
    assert!(stats["min"].as_f64().unwrap() < 0.0);
}

#[test]
fn classify_exit_codes() {
    let dir = setup();
    let o = phasekit(&["classify", "zero.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "stabilizer");
    assert_eq!(v["generators"], serde_json::json!([[1, 0]]));
    let o = phasekit(&["classify", "plus.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"], "negative_wigner");
    assert_eq!(phasekit(&["classify", "even.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn count_and_enumerate() {
    let dir = setup();
    let o = phasekit(&["count", "1", "1", "3"], dir.path());
    assert_eq!(stdout(&o), "n,m,d,iso,stabs,enumerated\n1,1,3,4,12,4\n");
    let v = json(&phasekit(&["count", "2", "2", "3", "--format", "json"], dir.path()));
    assert_eq!((v["iso"].as_str(), v["stabs"].as_str()), (Some("40"), Some("360")));
    let v = json(&phasekit(&["enumerate", "--d", "5", "--format", "json"], dir.path()));
    assert_eq!(v["count"], 30);
    let o = phasekit(&["enumerate", "--d", "11", "--n", "2"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn harness_is_reproducible() {
    let dir = setup();
    let a = phasekit(&["harness", "--d", "3", "--samples", "1000", "--seed", "5"], dir.path());
    assert!(a.status.success());
    let v = json(&a);
    assert_eq!(v["theorem_violations"], 0);
    assert_eq!(v["forward_passed"], 12);
    let b = phasekit(&["harness", "--d", "3", "--samples", "1000", "--seed", "5"], dir.path());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn counterexample_artifacts() {
    let dir = setup();
    let o = phasekit(&["counterexample", "--out", "figs", "--cell", "1"], dir.path());
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["lp"], "infeasible");
    assert_eq!(v["surviving_lines"].as_array().unwrap().len(), 3);
    let pgm = fs::read_to_string(dir.path().join("figs/mixture.pgm")).unwrap();
    let (w, h, px) = phasekit::io::parse_pgm(&pgm).unwrap();
    assert_eq!((w, h), (3, 3));
    assert_eq!(px.iter().filter(|&&g| g == 0).count(), 3);
    assert_eq!(px.iter().filter(|&&g| g == 255).count(), 6);
    for f in ["psi_minus.csv", "psi_minus.pgm", "surviving_lines.svg", "counterexample.json"] {
        assert!(dir.path().join("figs").join(f).exists(), "{f}");
    }
}

#[test]
fn galois_report() {
    let dir = setup();
    let o = phasekit(&["galois", "3", "2"], dir.path());
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["factorization"], "exact");
    assert_eq!(v["gap"]["ratio"], serde_json::json!([4, 1]));
    fs::write(dir.path().join("f9.json"), r#"{"p": 3, "n": 2, "poly": [2, 1, 1]}"#).unwrap();
    let v = json(&phasekit(&["galois", "3", "2", "--field", "f9.json"], dir.path()));
    assert_eq!(v["factorization_report"]["polynomial"], serde_json::json!([2, 1, 1]));
    assert_eq!(phasekit(&["galois", "3", "2", "--field", "zero.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn clifford_round_trip() {
    let dir = setup();
    fs::write(dir.path().join("fourier.json"), r#"{"S": [[0, -1], [1, 0]], "a": [1, 2], "d": 5, "n": 1}"#).unwrap();
    let o = phasekit(&["clifford", "synth", "fourier.json", "--out", "u"], dir.path());
    assert!(o.status.success());
    let o = phasekit(&["clifford", "recognize", "u/unitary.json"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["S"], serde_json::json!([[0, 4], [1, 0]]));
    assert_eq!(v["a"], serde_json::json!([1, 2]));
    fs::write(
        dir.path().join("t.json"),
        r#"{"d": 3, "n": 1, "entries": [[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[0.766044443118978,0.6427876096865393]]]}"#,
    )
    .unwrap();
    let o = phasekit(&["clifford", "recognize", "t.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["clifford"], false);
}

#[test]
fn config_and_env() {
    let dir = setup();
    fs::write(dir.path().join("run.toml"), "d = 5\nseed = 3\nformat = \"json\"\n").unwrap();
    let v = json(&phasekit(&["enumerate", "--config", "run.toml"], dir.path()));
    assert_eq!(v["d"], 5);
    fs::write(dir.path().join("bad.toml"), "d = 6\n").unwrap();
    assert_eq!(phasekit(&["enumerate", "--config", "bad.toml"], dir.path()).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_phasekit"))
        .args(["harness", "--d", "3", "--samples", "10"])
        .current_dir(dir.path())
        .env("PHASEKIT_OUT_DIR", dir.path().join("envout"))
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("envout/harness.json").exists());
}
