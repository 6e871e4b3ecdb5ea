use std::process::{Command, Output};

use detcheck::catalog::VerifyReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detcheck")).args(args).output().expect("binary runs")
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn without_timing(mut v: Value) -> Value {
    if let Some(m) = v.as_object_mut() {
        m.remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_lines_round_trip_byte_for_byte() {
    let out = run(&["--format", "json", "verify", "--case", "cekz_ct", "--n", "1..4", "--b", "7/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let report: VerifyReport = serde_json::from_str(line).unwrap();
        assert!(report.equal);
        assert_eq!(serde_json::to_string(&serde_json::to_value(&report).unwrap()).unwrap(), line);
        let value: Value = serde_json::from_str(line).unwrap();
        assert_eq!(serde_json::to_string(&value).unwrap(), line);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["asm", "--n", "1..4"]).status.code(), Some(0));
    assert_eq!(run(&["quad", "--tol", "1e-30"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--case", "andrews_at", "--b", "1/0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--case", "no_such_case"]).status.code(), Some(2));
    assert_eq!(run(&["asm", "--n", "1..8"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn poisoned_control_fails_every_point_and_exits_zero() {
    let out = run(&["--format", "json", "qt-random", "--n", "1..2", "--count", "3", "--poison"]);
    assert_eq!(out.status.code(), Some(0));
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 6);
    assert!(lines.iter().all(|v| v["equal"] == false));
}

#[test]
fn verify_all_is_deterministic_for_a_seed() {
    let args = ["--format", "json", "verify-all", "--n-max", "3", "--seed", "11", "--points", "2"];
    let a: Vec<Value> = json_lines(&run(&args)).into_iter().map(without_timing).collect();
    let b: Vec<Value> = json_lines(&run(&args)).into_iter().map(without_timing).collect();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn sequential_and_parallel_agree() {
    let base = ["--format", "json", "qt-random", "--n", "3", "--count", "4", "--seed", "5"];
    let seq: Vec<Value> = json_lines(&run(&[&base[..], &["--sequential"]].concat())).into_iter().map(without_timing).collect();
    let par: Vec<Value> = json_lines(&run(&[&base[..], &["--jobs", "4"]].concat())).into_iter().map(without_timing).collect();
    assert_eq!(seq.len(), 4);
    assert_eq!(seq, par);
}

#[test]
fn text_table_has_header_and_one_row_per_case() {
    let out = run(&["verify", "--case", "andrews_at", "--n", "1..=3", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    for col in ["CASE", "N", "PARAMS", "EQUAL", "ELAPSED_MS"] {
        assert!(header.contains(col));
    }
    assert_eq!(lines.filter(|l| l.contains("andrews_at")).count(), 3);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("detcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("asm.jsonl");
    let out = run(&["--format", "json", "--output", path.to_str().unwrap(), "asm", "--n", "1..3"]);
    assert_eq!(out.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
