use std::process::{Command, Output};

fn nczeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nczeta"))
        .args(args)
        .env_remove("NCZETA_FORMAT")
        .env_remove("NCZETA_TOL")
        .env_remove("NCZETA_PRECISION")
        .env_remove("NCZETA_CACHE")
        .output()
        .expect("run nczeta")
}

fn stdout(args: &[&str]) -> String {
    let out = nczeta(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn stuffle_golden() {
    assert_eq!(stdout(&["stuffle", "1", "1"]), "2*[1,1]\n1*[2]\n");
}

#[test]
fn shuffle_golden() {
    assert_eq!(stdout(&["shuffle", "01", "1"]), "2*011\n1*101\n");
}

#[test]
fn lyndon_golden() {
    assert_eq!(stdout(&["lyndon", "--alphabet", "x", "--max-weight", "2"]), "0\n1\n01\n");
}

#[test]
fn zeta_two() {
    let s = stdout(&["zeta", "2", "--tol", "1e-8"]);
    assert!(s.starts_with("1.64493406"), "{s}");
    assert!(s.contains("± ≤1e-08"), "{s}");
}

#[test]
fn zeta_json() {
    let s = stdout(&["zeta", "3", "--format", "json", "--tol", "1e-12"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((x - 1.2020569031595942).abs() < 1e-12);
    assert!(v["bound"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn tol_from_env() {
    let out = Command::new(env!("CARGO_BIN_EXE_nczeta"))
        .args(["zeta", "2"])
        .env("NCZETA_TOL", "1e-5")
        .output()
        .unwrap();
    assert!(String::from_utf8(out.stdout).unwrap().contains("≤1e-05"));
}

#[test]
fn li_log_two() {
    let s = stdout(&["li", "1", "--z", "1/2", "--tol", "1e-15"]);
    let x: f64 = s.split_whitespace().next().unwrap().parse().unwrap();
    assert!((x - std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn hsum_exact() {
    assert_eq!(stdout(&["hsum", "2,1", "--N", "3"]), "5/12\n");
}

#[test]
fn regzeta_forms() {
    assert_eq!(stdout(&["regzeta", "10", "--kind", "shuffle"]), "-ζ(2)\n");
    assert_eq!(stdout(&["regzeta", "1", "--kind", "stuffle"]), "0\n");
}

#[test]
fn relations_json_record() {
    let s = stdout(&["relations", "--max-weight", "3", "--tol", "1e-6", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    let r = &v["relations"][0];
    assert!(r["word"].is_string() && r["relation"].is_string() && r["residual"].is_number(), "{s}");
}

#[test]
fn diagram_count() {
    assert_eq!(stdout(&["diagram", "count", "3"]), "10 diagrams, multiplicity sum 25, Bell(3)^2 = 25\n");
}

#[test]
fn check_single_criterion() {
    let s = stdout(&["check", "--criterion", "6"]);
    assert!(s.starts_with("[PASS]"), "{s}");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(nczeta(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(nczeta(&["--precision", "32", "zeta", "2"]).status.code(), Some(2));
    assert_eq!(nczeta(&["--tol", "-1", "zeta", "2"]).status.code(), Some(2));
    assert_eq!(nczeta(&["stuffle", "1,x", "1"]).status.code(), Some(2));
}

#[test]
fn numeric_errors_exit_one() {
    let out = nczeta(&["zeta", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert_eq!(nczeta(&["li", "1", "--z", "2"]).status.code(), Some(1));
}

#[test]
fn cache_file_reused() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.jsonl");
    let p = path.to_str().unwrap();
    let first = stdout(&["--cache", p, "zeta", "2,1", "--tol", "1e-9"]);
    let lines = std::fs::read_to_string(&path).unwrap();
    assert!(lines.contains("\"word\":\"2,1\""), "{lines}");
    let second = stdout(&["--cache", p, "zeta", "2,1", "--tol", "1e-9"]);
    assert_eq!(first, second);

    std::fs::write(&path, format!("{lines}not json\n")).unwrap();
    let out = nczeta(&["--cache", p, "zeta", "2,1", "--tol", "1e-9"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("1 corrupt"));
}
