//! End-to-end tests of the command-line binary: exit-code contract, JSON
//! document shape, byte-level determinism, and the no-partial-output rule
//! for usage errors.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hartogs-quant"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should spawn")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout should be UTF-8")
}

#[test]
fn info_reports_the_invariant_tuple_and_exits_zero() {
    let out = run(&["info", "II:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("\"command\":\"info\""));
    assert!(text.contains("\"d\":3"));
    assert!(text.contains("\"suite\":\"domain_identities\""));
    assert!(text.ends_with("\"pass\":true}\n"));
}

#[test]
fn usage_errors_exit_two_and_emit_no_partial_document() {
    for args in [
        vec!["info", "V:9"],
        vec!["epsilon", "--x", "not json"],
        vec!["epsilon", "--x", "[[0.1,0.0]]"], // wrong coordinate count
        vec!["check", "--tol", "nope=1"],
        vec!["check", "--tol", "condition_a=abc"],
        vec!["check", "--domain", "I:2,2", "--mu", "0.8"], // outside the admissible set
        vec!["check", "--samples", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
        assert!(out.stdout.is_empty(), "args {args:?} wrote partial output");
        assert!(!out.stderr.is_empty(), "args {args:?} left stderr empty");
    }
}

#[test]
fn unknown_flags_exit_two() {
    let out = run(&["check", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_failures_exit_one() {
    // At the critical weight the integral diverges: a runtime error, not a
    // usage error.
    let out = run(&[
        "integrate",
        "--domain",
        "I:1,1",
        "--mu",
        "1",
        "--alpha",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    // A severely truncated pullback produces a failing (but well-formed)
    // report document.
    let out = run(&["pullback", "--alpha", "3", "--order", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_str(&out);
    assert!(text.contains("\"pass\":false"));
}

#[test]
fn check_runs_are_byte_identical_and_out_matches_stdout() {
    let dir = tempfile::tempdir().expect("tempdir");
    let out_path: PathBuf = dir.path().join("report.json");
    let csv_path: PathBuf = dir.path().join("pairs.csv");
    let args = [
        "check",
        "--domain",
        "I:1,1",
        "--mu",
        "1",
        "--samples",
        "1000",
        "--seed",
        "7",
    ];

    let first = bin()
        .args(args)
        .arg("--out")
        .arg(&out_path)
        .arg("--dump-samples")
        .arg(&csv_path)
        .output()
        .expect("binary should spawn");
    assert_eq!(first.status.code(), Some(0), "stderr: {:?}", first.stderr);

    let file_bytes = std::fs::read(&out_path).expect("out file");
    assert_eq!(file_bytes, first.stdout, "--out must mirror stdout bytes");

    let csv = std::fs::read_to_string(&csv_path).expect("csv file");
    let mut lines = csv.lines();
    let header = lines.next().expect("csv header");
    assert!(header.starts_with("x0_re,x0_im"));
    assert!(header.ends_with("exp_neg_d"));
    assert!(lines.count() > 0, "csv should contain sample rows");

    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let text = stdout_str(&first);
    for suite in [
        "domain_identities",
        "condition_a",
        "leading_identities",
        "condition_bprime",
        "einstein",
        "det_identity",
        "pullback",
        "integral_comparison",
    ] {
        assert!(
            text.contains(&format!("\"suite\":\"{suite}\"")),
            "missing {suite}"
        );
    }
}

#[test]
fn epsilon_reports_the_worked_disk_value() {
    let out = run(&["epsilon", "--domain", "I:1,1", "--mu", "2", "--alpha", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    // At the origin the kernel ratio invariant is 1 and epsilon = 7.
    assert!(text.contains("epsilon = 7.0000000000000000e0"));
}

#[test]
fn expansion_reports_the_worked_disk_coefficients() {
    let out = run(&["expansion", "--domain", "I:1,1", "--mu", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    assert!(text.contains("1.0000000000000000e0"));
    assert!(text.contains("-2.5000000000000000e0"));
    assert!(text.contains("\"pass\":true"));
}

#[test]
fn embed_rejects_matrix_bases() {
    let out = run(&["embed", "--domain", "II:2", "--mu", "0.75"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}
