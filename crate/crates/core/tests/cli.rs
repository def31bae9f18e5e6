use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chscatter::cli::csv::{read_profile, write_profile};
use chscatter::{solitary_profile, Grid1D, SampledFunction, SolitaryWaveSpec};
use serde_json::Value;
use tempfile::TempDir;

fn chscatter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chscatter"))
        .args(args)
        .env_remove("CHSCATTER_CONFIG")
        .output()
        .expect("binary runs")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn json_file(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write_fn(dir: &TempDir, name: &str, grid: Grid1D, f: impl Fn(f64) -> f64) -> PathBuf {
    let path = dir.path().join(name);
    write_profile(&path, &SampledFunction::from_fn(grid, f).unwrap()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn forward_of_zero_momentum_is_zero() {
    let dir = TempDir::new().unwrap();
    let m = write_fn(
        &dir,
        "m.csv",
        Grid1D::spanning(-5.0, 5.0, 1e-2).unwrap(),
        |_| 0.0,
    );
    let q_path = dir.path().join("q.csv");
    let out = chscatter(&["forward", s(&m), "--output", s(&q_path)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let q = read_profile(&q_path).unwrap();
    assert!(q.max_abs() <= 1e-12);
    assert_eq!(
        fs::read(&q_path).unwrap(),
        fs::read(dir.path().join("q.plot.csv")).unwrap()
    );
}

#[test]
fn forward_matches_golden() {
    let out = chscatter(&[
        "forward",
        s(&fixture("gaussian_m.csv")),
        "--ymin",
        "-5",
        "--ymax",
        "5",
        "--dy",
        "0.01",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let got = chscatter::cli::csv::parse_profile(&String::from_utf8(out.stdout).unwrap(), "stdout")
        .unwrap();
    let golden = read_profile(&fixture("forward_gaussian_golden.csv")).unwrap();
    assert_eq!(got.grid().len(), golden.grid().len());
    let worst = got
        .values()
        .iter()
        .zip(golden.values())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    assert!(worst <= 1e-8, "golden deviation {worst:e}");
}

#[test]
fn malformed_row_exits_2_with_line_number() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "coord,value\n0.0,0.0\nabc,1.0\n0.2,0.0\n").unwrap();
    let out = chscatter(&["forward", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.csv:3:"), "{}", stderr(&out));
}

#[test]
fn invert_of_zero_potential_is_zero() {
    let dir = TempDir::new().unwrap();
    let q = write_fn(
        &dir,
        "q.csv",
        Grid1D::spanning(-20.0, 20.0, 1e-2).unwrap(),
        |_| 0.0,
    );
    let m_path = dir.path().join("m.csv");
    let out = chscatter(&["invert", s(&q), "--output", s(&m_path)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(read_profile(&m_path).unwrap().max_abs() <= 1e-9);
    let diag = json_file(&dir.path().join("m.diagnostics.json"));
    let adm = diag["recovery"]["admissible_x"].as_array().unwrap();
    assert!((adm[0].as_f64().unwrap() + 20.0).abs() < 1e-9);
}

#[test]
fn invert_of_solitary_potential_matches_fast_path() {
    let dir = TempDir::new().unwrap();
    let spec = SolitaryWaveSpec::new(8.0 / 3.0, 0.0).unwrap();
    let q = write_fn(
        &dir,
        "q.csv",
        Grid1D::spanning(-45.0, 45.0, 5e-3).unwrap(),
        |y| spec.potential(y),
    );
    let m_path = dir.path().join("phi.csv");
    let out = chscatter(&[
        "invert",
        s(&q),
        "--xmin",
        "-10",
        "--xmax",
        "10",
        "--dx",
        "0.001",
        "--output",
        s(&m_path),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let phi = read_profile(&m_path).unwrap();
    let exact = solitary_profile(&spec, phi.grid()).unwrap();
    let peak = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (a, b) = (peak(phi.values()), peak(exact.m.values()));
    assert!((a - b).abs() <= 1e-5, "{a} vs {b}");
}

#[test]
fn invert_beyond_admissible_range_exits_3() {
    let dir = TempDir::new().unwrap();
    let q = write_fn(
        &dir,
        "q.csv",
        Grid1D::spanning(-20.0, 20.0, 1e-2).unwrap(),
        |_| 0.0,
    );
    let out = chscatter(&["invert", s(&q), "--xmin", "-100", "--xmax", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr(&out).contains("admissible interval"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn roundtrip_reports() {
    let dir = TempDir::new().unwrap();
    let report = dir.path().join("rt.json");
    let out = chscatter(&[
        "roundtrip",
        s(&fixture("gaussian_m.csv")),
        "--output",
        s(&report),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r = json_file(&report);
    assert!(r["sup_error"].as_f64().unwrap() <= 1e-4, "{r}");
    assert!(r["window"]["nodes"].as_u64().unwrap() > 10_000);

    let zero = write_fn(
        &dir,
        "zero.csv",
        Grid1D::spanning(-10.0, 10.0, 1e-2).unwrap(),
        |_| 0.0,
    );
    let out = chscatter(&["roundtrip", s(&zero)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["sup_error"].as_f64().unwrap() <= 1e-9, "{r}");
}

#[test]
fn roundtrip_rejects_nonpositive_weight() {
    let dir = TempDir::new().unwrap();
    let m = write_fn(
        &dir,
        "m.csv",
        Grid1D::spanning(-5.0, 5.0, 1e-2).unwrap(),
        |x| -1.5 * (-x * x).exp(),
    );
    let out = chscatter(&["roundtrip", s(&m)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solitary_runs_and_reports_residual() {
    let dir = TempDir::new().unwrap();
    for c in ["8/3", "10"] {
        let phi = dir.path().join(format!("phi_{}.csv", c.replace('/', "_")));
        let out = chscatter(&["solitary", "--c", c, "--output", s(&phi)]);
        assert!(out.status.success(), "{}", stderr(&out));
        let d = json_file(&phi.with_extension("diagnostics.json"));
        assert!(d["residual"].as_f64().unwrap() <= 1e-4, "c = {c}: {d}");
        assert_eq!(
            fs::read(&phi).unwrap(),
            fs::read(phi.with_extension("plot.csv")).unwrap()
        );
    }
}

#[test]
fn solitary_rejects_speed_two() {
    let out = chscatter(&["solitary", "--c", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("speed must exceed 2"));
}

#[test]
fn solitary_output_is_deterministic() {
    let a = chscatter(&["solitary", "--c", "8/3"]);
    let b = chscatter(&["solitary", "--c", "8/3"]);
    assert!(a.status.success());
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stderr, b.stderr);
}

#[test]
fn spectrum_of_solitary_well() {
    let out = chscatter(&["spectrum", "--c", "8/3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let mu = r["mu"].as_array().unwrap();
    let lambda = r["lambda"].as_array().unwrap();
    assert_eq!(mu.len(), 1);
    assert!((mu[0].as_f64().unwrap() + 0.0625).abs() <= 1e-6);
    assert!((lambda[0].as_f64().unwrap() + 0.1875).abs() <= 1e-6);
}

#[test]
fn spectrum_of_zero_potential_is_empty() {
    let dir = TempDir::new().unwrap();
    let q = write_fn(
        &dir,
        "q.csv",
        Grid1D::spanning(-20.0, 20.0, 1e-2).unwrap(),
        |_| 0.0,
    );
    let out = chscatter(&["spectrum", s(&q)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(r["mu"].as_array().unwrap().is_empty());
    assert!(r["lambda"].as_array().unwrap().is_empty());
}

#[test]
fn spectrum_bad_file_exits_2() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.csv");
    assert_eq!(chscatter(&["spectrum", s(&missing)]).status.code(), Some(2));
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "coord,value\n0,0\n1\n").unwrap();
    assert_eq!(chscatter(&["spectrum", s(&bad)]).status.code(), Some(2));
}

#[test]
fn config_file_from_env_with_flag_override() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"dx": 0.05, "xmin": -2.0, "xmax": 2.0}"#).unwrap();
    let run = |extra: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_chscatter"))
            .args(["solitary", "--c", "3"])
            .args(extra)
            .env("CHSCATTER_CONFIG", &cfg)
            .output()
            .unwrap()
    };
    let from_file = run(&[]);
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    let rows = |o: &Output| String::from_utf8_lossy(&o.stdout).lines().count() - 1;
    assert_eq!(rows(&from_file), 81);
    let overridden = run(&["--dx", "0.1"]);
    assert_eq!(rows(&overridden), 41);

    fs::write(&cfg, r#"{"dz": 1}"#).unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(chscatter(&["solitary"]).status.code(), Some(2));
    assert_eq!(
        chscatter(&["solitary", "--c", "fast"]).status.code(),
        Some(2)
    );
    assert_eq!(chscatter(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        chscatter(&["solitary", "--c", "3", "--dx", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(chscatter(&["--help"]).status.code(), Some(0));
}
