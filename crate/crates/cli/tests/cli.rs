use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qforms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qforms")).args(args).output().expect("spawn qforms")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON report")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qforms-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn exit_codes() {
    assert_eq!(qforms(&["--json", "i1", "--field", "R", "--diag", "1,1,1"]).status.code(), Some(0));
    // Undetermined is a verdict, not an error.
    let u = qforms(&["--json", "ruled", "--diag", "1,1,1,1,1,1,1,1,1,1,1,3"]);
    assert_eq!(u.status.code(), Some(0));
    assert_eq!(json(&u)["result"]["verdict"], "Undetermined");
    assert_eq!(qforms(&["--json", "i1", "--diag", "1,-1,2"]).status.code(), Some(1));
    assert_eq!(qforms(&["--json", "analyze", "--diag", "1,1/0"]).status.code(), Some(1));
    assert_eq!(qforms(&["--json"]).status.code(), Some(1));
    assert_eq!(qforms(&["--help"]).status.code(), Some(0));
    let bound = qforms(&["--json", "--factor-bound", "10", "analyze", "--diag", "1,1,618970019642690137449562111"]);
    assert_eq!(bound.status.code(), Some(2));
    assert_eq!(json(&bound)["error"]["kind"], "BoundExceeded");
}

#[test]
fn error_reports_echo_input() {
    let out = qforms(&["--json", "i1", "--diag", "1,2,z"]);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "i1");
    assert_eq!(v["input"]["diagonal"][2], "z");
    assert!(v.get("result").is_none());
    assert!(!v["error"]["message"].as_str().unwrap().is_empty());
}

#[test]
fn form_file_matches_flags() {
    let dir = scratch("form");
    let file = dir.join("q.json");
    std::fs::write(&file, r#"{"field":"Q","diagonal":["1","1","1","7"]}"#).unwrap();
    let a = qforms(&["--json", "analyze", "--form-file", file.to_str().unwrap()]);
    let b = qforms(&["--json", "analyze", "--diag", "1,1,1,7"]);
    assert_eq!(a.stdout, b.stdout);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn poly_and_diag_agree() {
    let a = json(&qforms(&["--json", "analyze", "--diag", "1,1,-2"]));
    let b = json(&qforms(&["--json", "analyze", "--poly", "x^2 + y^2 - 2*z^2"]));
    assert_eq!(a["result"]["invariants"], b["result"]["invariants"]);
}

#[test]
fn batch_keeps_input_order_and_appends() {
    let dir = scratch("batch");
    let input = dir.join("in.ndjson");
    let out = dir.join("out.ndjson");
    let dims: Vec<usize> = vec![9, 3, 17, 2, 5, 12, 4];
    let text: String = dims
        .iter()
        .map(|&m| format!("{{\"field\":\"R\",\"diagonal\":[{}]}}\n", vec!["\"1\""; m].join(",")))
        .collect();
    std::fs::write(&input, text).unwrap();
    let args = ["--json", "--out", out.to_str().unwrap(), "i1", "--batch", input.to_str().unwrap()];
    let first = qforms(&args);
    assert_eq!(first.status.code(), Some(0));
    let values: Vec<Value> = first.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty()).map(|l| serde_json::from_slice(l).unwrap()).collect();
    let want: Vec<usize> = dims.iter().map(|&m| m - (m.next_power_of_two() >> 1)).collect();
    let got: Vec<usize> = values.iter().map(|v| v["result"]["value"].as_u64().unwrap() as usize).collect();
    assert_eq!(got, want);
    for (i, v) in values.iter().enumerate() {
        assert_eq!(v["line"], i + 1);
    }
    qforms(&args);
    let saved = std::fs::read(&out).unwrap();
    assert_eq!(saved, [first.stdout.clone(), first.stdout].concat());
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn human_output_is_plain_text() {
    let out = qforms(&["i1", "--field", "R", "--diag", "1,1,1,1,1,1,1,1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("value: 4"), "{text}");
    assert!(!text.trim_start().starts_with('{'));
}

#[test]
fn verify_identities_suite() {
    let out = qforms(&["--json", "verify", "--suite", "identities"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"]["all_passed"], true);
    assert_eq!(v["result"]["failed"], 0);
}
