use std::process::{Command, Output};

use serde_json::Value;

fn sqavoid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqavoid"))
        .args(args)
        .env_remove("SQAVOID_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = sqavoid(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let v: Value = serde_json::from_str(&stdout(&all)).unwrap();
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn search_65() {
    let v = json(&["search", "--m", "65"]);
    assert_eq!(v["command"], "search");
    assert!(v["result"]["best_size"].as_u64().unwrap() >= 7);
    assert_eq!(v["result"]["exact"], true);
    let w = v["result"]["witness"].as_array().unwrap();
    assert_eq!(w.len(), 7);
}

#[test]
fn search_csv_witness() {
    let s = stdout(&["--csv", "search", "--m", "9"]);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines.len(), 2);
    let cols: Vec<&str> = lines[1].split(',').collect();
    assert_eq!(cols[0], "9");
    assert_eq!(cols[2], "3");
    assert_eq!(cols[7].split('-').count(), 3);
}

#[test]
fn construct_two_prime() {
    let v = json(&["construct", "--method", "two-prime", "--q1", "11", "--q2", "7"]);
    assert_eq!(v["result"]["m"], 77);
    assert!(v["result"]["set"].as_array().unwrap().len() >= 3);
    let v = json(&["construct", "--method", "ruzsa65"]);
    assert_eq!(v["result"]["set"].as_array().unwrap().len(), 7);
}

#[test]
fn bounds_for_a_prime() {
    let v = json(&["bounds", "--m", "7"]);
    assert_eq!(v["result"]["best"].as_f64(), Some(1.0));
    let s = stdout(&["--csv", "bounds", "--m", "65"]);
    assert_eq!(s.lines().count(), 7);
    assert!(!s.contains("\n\n"));
}

#[test]
fn table_rows() {
    let s = stdout(&["table", "--from", "3", "--to", "20"]);
    let lines: Vec<&str> = s.lines().collect();
    assert!(lines[0].starts_with("m,squarefree,omega,omega3,best_size,exact"));
    assert_eq!(lines.len(), 19);
    let row7: Vec<&str> = lines.iter().find(|l| l.starts_with("7,")).unwrap().split(',').collect();
    assert_eq!(row7[4], "1");
    let s = stdout(&["table", "--from", "9", "--to", "9"]);
    assert_eq!(s.lines().nth(1).unwrap().split(',').nth(4), Some("3"));
    let s = stdout(&["table", "--from", "20", "--to", "3"]);
    assert_eq!(s.lines().count(), 1);
}

#[test]
fn warm_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["--cache-dir", d, "table", "--from", "3", "--to", "120", "--budget-nodes", "2000"];
    let cold = stdout(&args);
    let warm = stdout(&args);
    assert_eq!(cold, warm);
    let scan = ["--cache-dir", d, "--csv", "scan", "--from", "3", "--to", "60", "--odd-only"];
    assert_eq!(stdout(&scan), stdout(&scan));
}

#[test]
fn density_and_tv() {
    let v = json(&["density", "--x", "10000", "--eps", "0.5"]);
    assert_eq!(v["result"]["total"], 10000);
    assert!(v["result"]["fail_iv"].is_null());
    let v = json(&["density", "--x", "1e300", "--eps", "1e-6", "--c", "1.5", "--grid", "--synthetic"]);
    assert_eq!(v["command"], "grid");
    let j = v["result"]["J"].as_u64().unwrap();
    assert!(j > 0);
    assert_eq!(v["result"]["y"].as_array().unwrap().len() as u64, j + 1);
    let v = json(&["tv", "--x", "10000", "--set", "2:50:3", "--set", "50:500:1"]);
    let tv = v["result"]["tv"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&tv));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| sqavoid(args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["--version"]), Some(0));
    assert_eq!(code(&["search"]), Some(64));
    assert_eq!(code(&["frobnicate"]), Some(64));
    assert_eq!(code(&["search", "--m", "7", "--budget-nodes", "0"]), Some(64));
    assert_eq!(code(&["tv", "--x", "100", "--set", "2:50:5"]), Some(64));
    assert_eq!(code(&["--json", "--csv", "bounds", "--m", "7"]), Some(64));
    assert_eq!(code(&["construct", "--method", "cohen"]), Some(64));
    assert_eq!(code(&["search", "--m", "0"]), Some(1));
    assert_eq!(code(&["construct", "--method", "cohen", "--p", "15"]), Some(1));
    assert_eq!(code(&["table", "--from", "0", "--to", "5"]), Some(1));
    assert_eq!(code(&["density", "--x", "1000", "--eps", "1.5"]), Some(1));
    assert_eq!(code(&["tv", "--x", "10", "--set", "2:50:all"]), Some(1));
    // too small a budget to prove anything at a product of two 3 mod 4 primes
    assert_eq!(
        code(&["search", "--m", "4087", "--budget-nodes", "1", "--no-seed", "--require-exact"]),
        Some(2)
    );
    assert_eq!(code(&["search", "--m", "65", "--require-exact"]), Some(0));
}

#[test]
fn json_round_trip() {
    let v = json(&["search", "--m", "45"]);
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(v, back);
    let r = &v["result"];
    assert!(r["lower_bound"].as_u64() <= r["upper_bound"].as_u64());
}
