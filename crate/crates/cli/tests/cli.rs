use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn example(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/examples").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cctt")).args(args).env_remove("CCTT_SEED").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

#[test]
fn eval_reports_value_and_steps() {
    let o = run(&["eval", &example("gcd_app_2_4.cat"), "--mode", "seq", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["value"], "2");
    assert!(v["steps"].as_u64().unwrap() <= 25);

    let v = json(&run(&["eval", &example("zero.cat"), "--json"]));
    assert_eq!(v["steps"], 0);

    let o = run(&["eval", &example("fib_app_2.cat"), "--mode", "par", "--json"]);
    let v = json(&o);
    assert_eq!(v["value"], "1");
    assert!(v["steps"].as_u64().unwrap() <= 25);
}

#[test]
fn eval_trace_ends_with_the_value() {
    let o = run(&["eval", &example("gcd_app_2_4.cat"), "--trace", "--json"]);
    let v = json(&o);
    let trace = v["trace"].as_array().unwrap();
    assert_eq!(trace.len() as u64, v["steps"].as_u64().unwrap() + 1);
    assert_eq!(trace.last().unwrap(), "2");
}

#[test]
fn eval_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    assert_eq!(code(&run(&["eval", &write("parse.cat", "(fst")])), 1);
    assert_eq!(code(&run(&["eval", &write("stuck.cat", "(fst 0)")])), 2);
    assert_eq!(code(&run(&["eval", &example("gcd_app_2_4.cat"), "--fuel", "3"])), 3);
    let guarded = write("guard.cat", "(arith + 8 1)");
    assert_eq!(code(&run(&["eval", &guarded])), 0);
    assert_eq!(code(&run(&["eval", &guarded, "--word-size", "8"])), 2);
}

#[test]
fn check_bound_passes_and_fails() {
    let o = run(&["check-bound", "gcd", "--samples", "256", "--word-size", "2^31", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["samples"].as_array().unwrap().len(), 256);
    assert_eq!(v["pass"], true);

    let o = run(&["check-bound", "fib", "--mode", "par", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["source"], "exhaustive");
    assert_eq!(v["samples"].as_array().unwrap().len(), 11);

    let cost = std::fs::read_to_string(example("gcd.cost.cat")).unwrap();
    let body: String = cost.lines().filter(|l| !l.starts_with(';')).collect::<Vec<_>>().join(" ");
    let minus_one = format!("(cff2 - {body} 1)");
    let o = run(&["check-bound", "gcd", &minus_one]);
    assert_eq!(code(&o), 5);
    assert!(String::from_utf8_lossy(&o.stdout).contains("witness: input (pair 0"));
}

#[test]
fn check_bound_is_reproducible_and_seed_env_wins() {
    let args = ["check-bound", "gcd", "--samples", "32", "--seed", "7", "--json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
    let o = Command::new(env!("CARGO_BIN_EXE_cctt")).args(args).env("CCTT_SEED", "0x10").output().unwrap();
    assert_eq!(json(&o)["seed"], 16);
    assert_ne!(json(&o)["samples"], json(&a)["samples"]);
}

#[test]
fn check_derivation_exit_codes() {
    for file in ["gcd.deriv.json", "fib.deriv.json", "countdown.deriv.json"] {
        let o = run(&["check-derivation", &example(file)]);
        assert_eq!(code(&o), 0, "{file}: {}", String::from_utf8_lossy(&o.stdout));
    }
    let text = std::fs::read_to_string(example("countdown.deriv.json")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p.display().to_string()
    };
    let tag = write("tag.json", &text.replacen("\"rule\": \"NatI-zero\"", "\"rule\": \"NatI-nought\"", 1));
    assert_eq!(code(&run(&["check-derivation", &tag])), 4);
    let schema = write("schema.json", &text.replacen("cctt-derivation/1", "cctt-derivation/9", 1));
    assert_eq!(code(&run(&["check-derivation", &schema])), 4);
    let expr = write("expr.json", &text.replacen("\"lhs\": \"", "\"lhs\": \"(", 1));
    assert_eq!(code(&run(&["check-derivation", &expr])), 1);
    let wrong = write("wrong.json", &text.replacen("\"rule\": \"NatI-suc\"", "\"rule\": \"NatI-zero\"", 1));
    assert_eq!(code(&run(&["check-derivation", &wrong])), 5);
}

#[test]
fn suite_subset_reports_json() {
    let o = run(&["suite", "--only", "3,8", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    let ids: Vec<u64> = v["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [3, 8]);
    let o = run(&["suite", "--only", "3"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.lines().any(|l| l.trim_start().starts_with("3 |") && l.contains("pass")), "{text}");
}
