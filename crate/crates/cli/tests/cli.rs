//! End-to-end checks of the binary: subcommand output, formats, exit
//! codes, dataset override, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_mertens-ap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn mertens_plain_value() {
    let out = run(&["mertens", "--x", "1000000"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "212");
}

#[test]
fn mertens_ap_json_fields() {
    let out = run(&[
        "mertens-ap", "--x", "100000", "--q", "7", "--a", "3", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let row = &doc["rows"][0];
    for key in ["value", "d", "b", "r"] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
    assert_eq!(row["d"], 1);
    assert_eq!(row["r"], 7);
    assert!(doc["meta"]["version"].is_string());
}

#[test]
fn mertens_ap_csv_header() {
    let out = run(&["mertens-ap", "--x", "100", "--q", "4", "--a", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "x,q,a,value,d,b,r");
    assert!(lines.next().unwrap().starts_with("100,4,2,"));
}

#[test]
fn characters_listing() {
    let out = run(&["characters", "--q", "12", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5); // header + phi(12) rows
    assert!(text.contains("12:1,1"));
}

#[test]
fn explicit_formula_passes_on_bundled_data() {
    let out = run(&[
        "explicit-formula", "--chi", "4:1", "--t", "20", "--h", "1", "--delta", "2",
    ]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).starts_with("PASS"));
}

#[test]
fn validation_errors_exit_2() {
    let out = run(&["explicit-formula", "--chi", "not-a-label", "--t", "20"]);
    assert_eq!(out.status.code(), Some(2));
    // Unknown bundled modulus.
    let out = run(&["zeros-stats", "--q", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn coverage_errors_exit_3() {
    // t far beyond the bundled coverage.
    let out = run(&["zeros-stats", "--q", "1", "--t", "5000"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("coverage"), "stderr: {err}");
}

#[test]
fn dataset_dir_override() {
    let dir = std::env::temp_dir().join("mertens_ap_cli_test_data");
    std::fs::create_dir_all(&dir).unwrap();
    // A tiny custom dataset for q = 1 with low coverage.
    std::fs::write(
        dir.join("custom.lzeros"),
        "# format=lzeros-v1\n# q=1\n# label=1:\n# gamma_max=20\n# symmetric=true\n14.134725142\n",
    )
    .unwrap();
    let out = bin()
        .args(["zeros-stats", "--q", "1", "--t", "15", "--format", "csv"])
        .env("MERTENS_AP_DATA", &dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let row = text.lines().nth(1).unwrap();
    assert!(row.starts_with("1,1,20"), "row: {row}");
    // The same request against bundled data sees 100 zeros.
    let out = run(&["zeros-stats", "--q", "1", "--t", "15", "--format", "csv"]);
    let text = stdout(&out);
    assert!(text.lines().nth(1).unwrap().starts_with("1,100,"));
}

#[test]
fn deterministic_output_for_fixed_seed_any_threads() {
    let a = run(&["perron-check", "--x", "80", "--q", "3", "--threads", "1", "--format", "csv"]);
    let b = run(&["perron-check", "--x", "80", "--q", "3", "--threads", "4", "--format", "csv"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let c = run(&["inequalities", "--trials", "2000", "--seed", "9", "--format", "csv"]);
    let d = run(&["inequalities", "--trials", "2000", "--seed", "9", "--format", "csv"]);
    assert_eq!(stdout(&c), stdout(&d));
}

#[test]
fn self_tests_pass() {
    for args in [
        vec!["mertens", "--x", "10", "--self-test"],
        vec!["characters", "--q", "24", "--self-test"],
        vec!["selberg-check", "--self-test"],
        vec!["inequalities", "--self-test"],
        vec!["envelope-table", "--q", "3", "--self-test"],
        vec!["contour-schedule", "--x", "64", "--self-test"],
        vec!["typicality", "--q", "4", "--t", "20", "--self-test"],
        vec!["perron-check", "--x", "150", "--q", "3", "--self-test"],
        vec!["explicit-formula", "--chi", "4:1", "--t", "20", "--self-test"],
    ] {
        let out = run(&args);
        assert!(
            out.status.success(),
            "{args:?}: stdout {} stderr {}",
            stdout(&out),
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(stdout(&out).contains("PASS"));
        assert!(!stdout(&out).contains("FAIL"));
    }
}

#[test]
fn envelope_table_csv() {
    let out = run(&[
        "envelope-table", "--q", "3", "--a", "1", "--x-list", "100,1000", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().next().unwrap().starts_with("x,m_value,envelope_log"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn contour_schedule_degenerate_summary() {
    let out = run(&["contour-schedule", "--x", "1048576", "--q", "1", "--c", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("K=20"), "{text}");
    assert!(text.contains("l=25"), "{text}");
    assert!(text.contains("degenerate=true"), "{text}");
}

#[test]
fn output_to_file() {
    let path = std::env::temp_dir().join("mertens_ap_out.csv");
    let _ = std::fs::remove_file(&path);
    let out = run(&[
        "mertens", "--x", "1000", "--format", "csv", "--output", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    assert!(text.contains("1000,2"));
}
