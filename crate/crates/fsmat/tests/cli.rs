//! End-to-end tests of the fsmat binary: golden JSON reports (timing fields
//! stripped), text output spot checks, and the 0/2/3 exit-code contract.

use std::path::PathBuf;
use std::process::Command;

use serde_json::{json, Value};

fn fixture(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fsmat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run_cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fsmat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

/// Runs with --json and returns the parsed report with volatile timing
/// fields removed.
fn run_json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, stdout, _) = run_cli(&full);
    let mut v: Value = serde_json::from_str(&stdout).expect("stdout is JSON");
    strip_timing(&mut v);
    (code, v)
}

fn strip_timing(v: &mut Value) {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing_ms");
        if let Some(result) = obj.get_mut("result").and_then(Value::as_object_mut) {
            result.remove("wall_time_ms");
        }
    }
}

#[test]
fn compress_all_golden() {
    let family = fixture("pair.family", "m=2\n1,2\n");
    let (code, report) = run_json(&["compress", family.to_str().unwrap(), "--element", "all"]);
    assert_eq!(code, 0);
    assert_eq!(
        report,
        json!({
            "command": "compress",
            "inputs": { "element": "all" },
            "result": {
                "m": 2,
                "size": 1,
                "measure_before": 2,
                "measure_after": 0,
                "sets": [[]],
            },
            "version": env!("CARGO_PKG_VERSION"),
        })
    );
}

#[test]
fn compress_text_output() {
    let family = fixture("pair2.family", "m=2\n1,2\n");
    let (code, stdout, _) = run_cli(&["compress", family.to_str().unwrap(), "--element", "all"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("measure 2 -> 0"), "{stdout}");
    assert!(stdout.contains("m=2"), "{stdout}");
}

#[test]
fn compress_single_element() {
    let family = fixture("single.family", "m=1\n-\n1\n");
    let (code, report) = run_json(&["compress", family.to_str().unwrap(), "--element", "1"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["sets"], json!([[], [1]]));
}

#[test]
fn parse_error_exits_2_and_names_the_line() {
    let family = fixture("broken.family", "m=2\n1,2\nbogus\n");
    let (code, _, stderr) = run_cli(&["compress", family.to_str().unwrap(), "--element", "all"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("line 3"), "{stderr}");
}

#[test]
fn missing_file_exits_2() {
    let (code, _, stderr) = run_cli(&["shatter", "/nonexistent.family", "--k", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"), "{stderr}");
}

#[test]
fn shatter_power_set_golden() {
    let family = fixture("p2.family", "m=2\n-\n1\n2\n1,2\n");
    let (code, report) = run_json(&["shatter", family.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(report["result"]["shattered"], json!([[1, 2]]));
    assert_eq!(report["result"]["count"], json!(1));
    assert_eq!(report["result"]["threshold"], json!(4));
    assert_eq!(report["result"]["threshold_met"], json!(true));
}

#[test]
fn shatter_k_above_m_exits_2() {
    let family = fixture("p2b.family", "m=2\n-\n1\n");
    let (code, _, stderr) = run_cli(&["shatter", family.to_str().unwrap(), "--k", "3"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("error:"), "{stderr}");
}

#[test]
fn pipeline_all_columns_golden() {
    let matrix = fixture("all3.matrix", "m=3 n=8\n01010101\n00110011\n00001111\n");
    let (code, report) = run_json(&["pipeline", matrix.to_str().unwrap(), "--k", "2"]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!(r["family_size"], json!(8));
    assert_eq!(r["down_family_size"], json!(8));
    assert_eq!(r["shattered_count"], json!(3));
    assert_eq!(r["transfer_checked"], json!(true));
    assert_eq!(r["contributions"]["total"], json!(4));
}

#[test]
fn pipeline_rejects_duplicate_columns() {
    let matrix = fixture("dup.matrix", "m=2 n=2\n00\n11\n");
    let (code, _, stderr) = run_cli(&["pipeline", matrix.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("simple"), "{stderr}");
}

#[test]
fn contributions_accepts_non_simple_input() {
    let matrix = fixture("strip.matrix", "m=1 n=4\n0101\n");
    let (code, report) = run_json(&["contributions", matrix.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!(r["total"], json!(2));
    assert_eq!(r["per_row_set"][0]["rows"], json!([1]));
    assert_eq!(r["per_row_set"][0]["windows"], json!([[1, 2], [3, 4]]));
}

#[test]
fn fs_search_finds_zero_zero_value() {
    let pattern = fixture("zz.pattern", "k=1 l=2\n00\n");
    let (code, report) = run_json(&["fs-search", "--m", "3", "--pattern", pattern.to_str().unwrap()]);
    assert_eq!(code, 0);
    let r = &report["result"];
    assert_eq!(r["value"], json!(4));
    assert_eq!(r["m"], json!(3));
    assert_eq!(r["k"], json!(1));
    assert_eq!(r["l"], json!(2));
    assert_eq!(r["witness"].as_array().unwrap().len(), 3);
    assert_eq!(report["inputs"]["budget"], json!(10_000_000));
}

#[test]
fn fs_search_is_deterministic() {
    let pattern = fixture("ones.pattern", "k=2 l=2\n11\n11\n");
    let args = ["fs-search", "--m", "4", "--pattern", pattern.to_str().unwrap(), "--seed", "7"];
    let (c1, r1) = run_json(&args);
    let (c2, r2) = run_json(&args);
    assert_eq!(c1, 0);
    assert_eq!(c2, 0);
    assert_eq!(r1, r2);
}

#[test]
fn fs_search_budget_exhaustion_exits_3() {
    let pattern = fixture("zz2.pattern", "k=1 l=2\n00\n");
    let (code, stdout, stderr) = run_cli(&[
        "--json",
        "fs-search",
        "--m",
        "3",
        "--pattern",
        pattern.to_str().unwrap(),
        "--budget",
        "2",
    ]);
    assert_eq!(code, 3);
    assert!(stderr.contains("budget"), "{stderr}");
    let payload: Value = serde_json::from_str(&stdout).expect("error payload is JSON");
    assert_eq!(payload["budget"], json!(2));
    assert!(payload["lower_bound"].as_u64().unwrap() <= payload["upper_bound"].as_u64().unwrap());
}

#[test]
fn exponents_single_k_golden() {
    let (code, report) = run_json(&["exponents", "--k", "4"]);
    assert_eq!(code, 0);
    let row = &report["result"]["rows"][0];
    assert_eq!(row["k"], json!(4));
    assert_eq!(row["mode"], json!("exact"));
    let fs = row["fs_exponent"].as_f64().unwrap();
    assert!((fs - 5.618).abs() < 1e-3, "{fs}");
}

#[test]
fn exponents_table_rows() {
    let (code, report) = run_json(&["exponents", "--table", "3..5", "--mode", "quadratic"]);
    assert_eq!(code, 0);
    let rows = report["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let fs5 = rows[2]["fs_exponent"].as_f64().unwrap();
    assert!((fs5 - (5.0 * 5.0 / 3.0 - 1.0)).abs() < 1e-6, "{fs5}");
}

#[test]
fn exponents_k2_mode() {
    let (code, report) = run_json(&["exponents", "--k", "2", "--mode", "k2"]);
    assert_eq!(code, 0);
    let fs = report["result"]["rows"][0]["fs_exponent"].as_f64().unwrap();
    assert!((fs - 2.0).abs() < 1e-4, "{fs}");
}

#[test]
fn exponents_flag_misuse_exits_2() {
    let (code, _, stderr) = run_cli(&["exponents", "--k", "4", "--table", "3..5"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("exactly one"), "{stderr}");

    let (code, _, _) = run_cli(&["exponents"]);
    assert_eq!(code, 2);

    let (code, _, stderr) = run_cli(&["exponents", "--k", "4", "--mode", "cubic"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("cubic"), "{stderr}");
}

#[test]
fn json_reports_round_trip() {
    let family = fixture("rt.family", "m=3\n-\n1\n2,3\n");
    let (code, report) = run_json(&["shatter", family.to_str().unwrap(), "--k", "1"]);
    assert_eq!(code, 0);
    let text = serde_json::to_string(&report).unwrap();
    let back: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(report, back);
    for key in ["command", "inputs", "result", "version"] {
        assert!(report.get(key).is_some(), "missing {key}");
    }
}
