use std::process::{Command, Output};

use serde_json::Value;

fn lambda2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda2")).args(args).env_remove("LAMBDA2_CACHE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn classify_json_schema() {
    let out = lambda2(&["--json", "classify", "--d", "1394"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["d"], 697);
    assert_eq!(v["normalized_from"], 1394);
    assert_eq!(v["status"], "ProvenZero");
    assert_eq!(v["theorem"], "MainTheorem11");
    assert!(v["case"].is_null());
    assert!(v["evidence"].as_array().unwrap().iter().all(|e| e["name"].is_string() && e["value"].is_string()));
}

#[test]
fn exit_codes() {
    assert_eq!(lambda2(&["classify", "--d", "12"]).status.code(), Some(2));
    assert_eq!(lambda2(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lambda2(&["verify", "no-such-suite"]).status.code(), Some(2));
    // too few qualifying pairs below the bound is a suite failure
    let out = lambda2(&["verify", "thm76-det", "--bound", "2000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("FAIL thm76-det"));
    let out = lambda2(&["--workers", "3", "verify", "thm76-det"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn search_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pairs.csv");
    let out = lambda2(&["search", "--bound", "100", "--csv", path.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "p,q,pq,p_1_mod_8,q_9_mod_16,p_over_q,quartic_product,quartic_or,status");
    assert_eq!(lines[1], "17,41,697,1,1,1,1,1,ProvenZero(MainTheorem11)");
    assert_eq!(lines.len(), 4);
}

#[test]
fn symbols_and_matrices() {
    let v = json(&lambda2(&["symbols", "--p", "17", "--q", "41"]));
    assert_eq!(v["(2/p)_4"], -1);
    assert_eq!(v["(pq/2)_4"], -1);
    assert_eq!(v["(p/q)_4"], Value::Null);
    assert_eq!(v["all_hypotheses"], true);
    let v = json(&lambda2(&["symbols", "--hilbert", "-1", "-1"]));
    assert_eq!(v["product"], 1);
    let v = json(&lambda2(&["symbols", "--hilbert", "-1,0", "2,1", "--base", "q1"]));
    assert_eq!(v["dyadic_by_search"], v["places"].as_array().unwrap().last().unwrap()["symbol"]);
    let v = json(&lambda2(&["--json", "redei", "--f1", "17", "41"]));
    assert_eq!((v["r2"].as_u64(), v["r4"].as_u64()), (Some(3), Some(0)));
    let v = json(&lambda2(&["--json", "classgroup", "--disc", "1513", "--wide"]));
    assert_eq!(v["class_number"], 2);
    let v = json(&lambda2(&["--json", "unit", "--d", "697"]));
    assert_eq!(v["unit"], "132 + 5*sqrt(697)");
    assert_eq!(v["norm"], -1);
}

#[test]
fn cache_env_overrides_flag() {
    let dir = tempfile::tempdir().unwrap();
    let flag = dir.path().join("flag.jsonl");
    let env = dir.path().join("env.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_lambda2"))
        .args(["--cache", flag.to_str().unwrap(), "classify", "--d", "697"])
        .env("LAMBDA2_CACHE", &env)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!flag.exists());
    let first = std::fs::read_to_string(&env).unwrap();
    assert_eq!(first.lines().count(), 1);
    let again = lambda2(&["--cache", env.to_str().unwrap(), "classify", "--d", "697"]);
    assert_eq!(again.stdout, out.stdout);
    assert_eq!(std::fs::read_to_string(&env).unwrap(), first);
}
