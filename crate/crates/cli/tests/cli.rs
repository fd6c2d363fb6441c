use std::process::Command;

use clap::Parser;
use proptest::prelude::*;
use serde_json::Value;

use nonfree_cli::{reverify, run, Cli, WORKERS_ENV};

/// Runs the command in-process and returns (exit code, parsed records).
fn run_args(args: &[&str]) -> (i32, Vec<Value>) {
    let mut full = vec!["nonfree"];
    full.extend_from_slice(args);
    let cli = match Cli::try_parse_from(full) {
        Ok(c) => c,
        Err(e) => return (e.exit_code(), Vec::new()),
    };
    let mut out = Vec::new();
    let code = run(&cli, &mut out);
    let text = String::from_utf8(out).unwrap();
    let records = text
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect();
    (code, records)
}

fn binary(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nonfree"))
        .args(args)
        .env_remove(WORKERS_ENV)
        .output()
        .unwrap()
}

fn assert_round_trip(records: &[Value]) {
    for r in records {
        if r["verified"] == Value::Bool(true) {
            assert_ne!(reverify(r), Some(false), "record fails re-verification: {r}");
        }
    }
}

#[test]
fn verify_known_half_relation() {
    let (code, recs) = run_args(&["verify", "--tau", "9/4", "--seq", "1,-1,1,14,2"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["verified"], true);
    assert_eq!(recs[0]["result"]["kind"], "GroupNontrivial");
    assert_eq!(reverify(&recs[0]), Some(true));
}

#[test]
fn verify_non_half_relation_reports_defect() {
    let (code, recs) = run_args(&["verify", "--tau", "2", "--seq", "1,1,1"]);
    assert_eq!(code, 1);
    assert_eq!(recs[0]["verified"], false);
    assert_eq!(recs[0]["result"]["defect"], "6");
}

#[test]
fn malformed_inputs_exit_two() {
    assert_eq!(run_args(&["verify", "--tau", "1/0", "--seq", "1"]).0, 2);
    assert_eq!(run_args(&["poly", "--seq", "a?"]).0, 2);
    assert_eq!(run_args(&["poly", "--seq", ""]).0, 2);
    assert_eq!(run_args(&["search", "--tau", "2", "--max-len", "13", "--bound", "2"]).0, 2);
    assert_eq!(run_args(&["family", "--name", "b", "--k", "1"]).0, 2);
    assert_eq!(run_args(&["family", "--name", "z", "--k", "1"]).0, 2);
    assert_eq!(run_args(&["family", "--name", "b", "--sigma", "2,2", "--k", "1"]).0, 2);
}

#[test]
fn binary_exit_codes_and_stderr() {
    let out = binary(&["family", "--name", "d", "--k", "-2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate tau=0"));
    assert!(out.stdout.is_empty());

    let out = binary(&["verify", "--tau", "1/0", "--seq", "1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = binary(&["search", "--tau", "5", "--max-len", "4", "--bound", "6"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn family_d_ladder() {
    let (code, recs) = run_args(&["family", "--name", "d", "--k-range", "2..7"]);
    assert_eq!(code, 0);
    let taus: Vec<&str> = recs.iter().map(|r| r["result"]["tau"].as_str().unwrap()).collect();
    assert_eq!(taus, ["3", "5/2", "8/3", "13/5", "21/8", "34/13"]);
    assert!(recs.iter().all(|r| r["verified"] == true));
    assert_round_trip(&recs);
}

#[test]
fn family_b_n_column() {
    let (code, recs) = run_args(&["family", "--name", "b", "--sigma", "2,3", "--k-range", "-3..3"]);
    assert_eq!(code, 0);
    let ns: Vec<&str> = recs.iter().map(|r| r["result"]["n"].as_str().unwrap()).collect();
    assert_eq!(ns, ["1105", "51", "3", "1", "5", "95", "2071"]);
    for r in &recs {
        assert_eq!(r["result"]["semigroup"], "positive words at tau");
    }
    assert_round_trip(&recs);
}

#[test]
fn family_ranges_skip_invalid_k() {
    let (code, recs) = run_args(&["family", "--name", "d", "--k-range", "-3..0"]);
    assert_eq!(code, 0);
    let ks: Vec<i64> = recs.iter().map(|r| r["result"]["k"].as_i64().unwrap()).collect();
    assert_eq!(ks, [-3, -1]);
    let (code, recs) = run_args(&["family", "--name", "c", "--variant", "even", "--k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["family"], "C_even");
    let (code, _) = run_args(&["family", "--name", "c", "--variant", "even", "--k", "3"]);
    assert_eq!(code, 2);
    let (code, recs) = run_args(&["family", "--name", "e", "--k", "2", "--x", "-2"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["x"], "-2");
    assert_round_trip(&recs);
}

#[test]
fn search_records_and_summary() {
    let (code, recs) = run_args(&["search", "--tau", "2", "--max-len", "3", "--bound", "2"]);
    assert_eq!(code, 0);
    let summary = recs.last().unwrap();
    assert_eq!(summary["result"]["summary"]["exhausted"], true);
    assert_eq!(summary["result"]["summary"]["hits"].as_u64().unwrap() as usize, recs.len() - 1);
    assert_round_trip(&recs);
}

#[test]
fn search_limit_marks_truncation() {
    let (code, recs) = run_args(&["search", "--tau", "2", "--max-len", "3", "--bound", "2", "--limit", "2"]);
    assert_eq!(code, 0);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[2]["result"]["summary"]["exhausted"], false);
}

#[test]
fn worker_count_does_not_change_hits() {
    let hits = |w: &str| {
        let (_, recs) = run_args(&["search", "--tau", "2", "--max-len", "3", "--bound", "2", "--workers", w]);
        recs[..recs.len() - 1].iter().map(|r| r["result"].clone()).collect::<Vec<_>>()
    };
    assert_eq!(hits("1"), hits("8"));
}

#[test]
fn workers_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_nonfree"))
        .args(["search", "--tau", "2", "--max-len", "2", "--bound", "2"])
        .env(WORKERS_ENV, "3")
        .output()
        .unwrap();
    let first: Value = serde_json::from_slice(out.stdout.split(|b| *b == b'\n').next().unwrap()).unwrap();
    assert_eq!(first["inputs"]["workers"], 3);

    let out = Command::new(env!("CARGO_BIN_EXE_nonfree"))
        .args(["search", "--tau", "2", "--max-len", "2", "--bound", "2", "--workers", "2"])
        .env(WORKERS_ENV, "3")
        .output()
        .unwrap();
    let first: Value = serde_json::from_slice(out.stdout.split(|b| *b == b'\n').next().unwrap()).unwrap();
    assert_eq!(first["inputs"]["workers"], 2);
}

#[test]
fn classify_examples() {
    let (_, recs) = run_args(&["classify", "--tau", "17/5"]);
    assert_eq!(recs[0]["result"]["group"]["status"], "NonFree");
    assert!(recs[0]["result"]["group"]["source"].as_str().unwrap().starts_with("family E"));
    assert_eq!(reverify(&recs[0]), Some(true));

    let (code, recs) = run_args(&["classify", "--tau", "-4"]);
    assert_eq!(code, 0);
    assert_eq!(recs[0]["result"]["group"]["status"], "FreeSchottky");

    let (code, recs) = run_args(&["classify", "--tau", "7/10"]);
    assert_eq!(code, 1);
    assert_eq!(recs[0]["result"]["group"]["status"], "Unknown");
    assert_eq!(recs[0]["result"]["semigroup"]["status"], "Unknown");
    assert_eq!(recs[0]["verified"], false);

    let (_, recs) = run_args(&["classify", "--tau", "64/81"]);
    assert_eq!(recs[0]["result"]["semigroup"]["status"], "NonSemigroupFree");
    assert_round_trip(&recs);
}

#[test]
fn poly_examples() {
    let (_, recs) = run_args(&["poly", "--seq", "1,-1,1,-1,7"]);
    assert_eq!(recs[0]["result"]["rendering"], "7τ² − 23τ + 11");
    let (_, recs) = run_args(&["poly", "--seq", "5"]);
    assert_eq!(recs[0]["result"]["coefficients"], serde_json::json!(["5"]));
    assert_eq!(reverify(&recs[0]), Some(true));
}

#[test]
fn table_output_is_aligned_text() {
    let out = binary(&["--table", "family", "--name", "d", "--k-range", "2..4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("family"));
    assert!(lines[2].contains("5/2"));
}

#[test]
fn tampered_record_fails_reverification() {
    let (_, recs) = run_args(&["verify", "--tau", "9/4", "--seq", "1,-1,1,14,2"]);
    let mut r = recs[0].clone();
    r["result"]["relation"]["eval_tau"] = Value::String("7/3".into());
    assert_eq!(reverify(&r), Some(false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verified_records_round_trip(seq in prop::collection::vec((-6i64..=6).prop_filter("nonzero", |a| *a != 0), 1..6),
                                   p in -15i64..=15, q in 1i64..=6) {
        let text: Vec<String> = seq.iter().map(|a| a.to_string()).collect();
        let tau = format!("{p}/{q}");
        let (code, recs) = run_args(&["verify", "--tau", &tau, "--seq", &text.join(",")]);
        prop_assert!(code == 0 || code == 1);
        let r = &recs[0];
        prop_assert_eq!(code == 0, r["result"]["is_half_relation"] == true);
        if r["verified"] == true {
            prop_assert_eq!(reverify(r), Some(true));
        }
    }
}
