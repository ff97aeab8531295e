use std::fs;
use std::process::Command;

use hofq_cli::{main_with_args, EXIT_FAILED, EXIT_MODEL, EXIT_OK, EXIT_USAGE};

const GOLDEN: &str = include_str!("../../core/tests/golden/checkall_published.txt");

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn hofq(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = main_with_args(std::iter::once("hofq").chain(args.iter().copied()), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn model_text() -> String {
    hofq(&["model", "serialize"]).out
}

#[test]
fn binary_checkall_matches_golden() {
    let out = Command::new(env!("CARGO_BIN_EXE_hofq")).arg("checkall").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), GOLDEN);
    assert!(out.stderr.is_empty());
}

#[test]
fn checkall_json_and_full_scope() {
    let r = hofq(&["checkall", "--format", "json", "--edge-scope", "full"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["verified"], true);
    assert_eq!(v["edge_scope"], "full");
    assert_eq!(v["induced_edges"].as_array().unwrap().len(), 6);
    assert_eq!(v["results"].as_array().unwrap().len(), 15);
}

#[test]
fn seq_reports_and_formats() {
    let r = hofq(&["seq", "--max", "1000000"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("violations: 0\n"));

    let r = hofq(&["seq", "--max", "8", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    let lines: Vec<&str> = r.out.lines().collect();
    assert_eq!(lines[0], "n,q,arg1,arg2,perturbation");
    assert_eq!(lines[8], "8,5,3,5,1");

    let r = hofq(&["seq", "--max", "8", "--format", "bfile"]);
    let q: Vec<&str> = r.out.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(q, ["1", "1", "1", "3", "3", "3", "5", "5"]);

    let r = hofq(&["seq", "--max", "1000", "--stride", "250", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["violation_count"], 0);
    assert_eq!(v["ratio_samples"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_three() {
    for args in [
        &["bogus"][..],
        &["seq"],
        &["seq", "--max", "0"],
        &["seq", "--max", "1"],
        &["seq", "--max", "10", "--file", "model.txt"],
        &["checkall", "--format", "csv"],
        &["model", "serialize", "--format", "json"],
        &["model", "dot", "--format", "json"],
        &["supports", "--mode", "C"],
        &["checkall", "--edge-scope", "partial"],
        &["sensitive", "--stride", "5"],
    ] {
        let r = hofq(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(!r.err.is_empty(), "{args:?}");
        assert!(r.out.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let r = hofq(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("checkall"));
}

#[test]
fn malformed_model_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    fs::write(&path, "[CONTEXTS]\n0 C,E,B R9 1 1 0\n").unwrap();
    let r = hofq(&["model", "validate", "--file", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_MODEL);
    assert_eq!(r.err.lines().count(), 1);
    assert!(r.err.contains("line 2"), "{}", r.err);

    let missing = dir.path().join("absent.model");
    let r = hofq(&["checkall", "--file", missing.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_MODEL);
}

#[test]
fn semantically_invalid_model_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("edge.model");
    let text = model_text().replace("[PSI]\n", "[PSI]\n0 1\n");
    fs::write(&path, text).unwrap();
    let r = hofq(&["model", "validate", "--file", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_MODEL);
    assert!(r.out.contains("[FAIL] psi_debt_preserving"));
    assert!(r.out.ends_with("model INVALID\n"));
}

#[test]
fn serialized_model_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("copy.model");
    fs::write(&path, model_text()).unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(hofq(&["model", "serialize", "--file", p]).out, model_text());
    let r = hofq(&["checkall", "--file", p]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out, GOLDEN);
}

#[test]
fn failing_certificate_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("noloop.model");
    // drop every relation pair into S1[0] or S2[0]
    let mut section = "";
    let mut text = String::new();
    for line in model_text().lines() {
        if line.starts_with('[') {
            section = if line == "[RELATION]" { "rel" } else { "" };
        } else if section == "rel" && (line.ends_with(" 1 0") || line.ends_with(" 2 0")) {
            continue;
        }
        text.push_str(line);
        text.push('\n');
    }
    fs::write(&path, text).unwrap();
    let r = hofq(&["checkall", "--file", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_FAILED, "{}", r.out);
    assert!(r.out.contains("no valid assignment"));
    assert!(r.out.starts_with("========"));
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.txt");
    let r = hofq(&["checkall", "--output", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.is_empty());
    assert_eq!(fs::read_to_string(&path).unwrap(), GOLDEN);

    let bad = dir.path().join("no/such/dir/out.txt");
    let r = hofq(&["checkall", "-o", bad.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn diagnostic_reports() {
    let r = hofq(&["sensitive"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.starts_with("sensitive contexts (10): 0 2 4 6 8 14 16 18 24 26\n"));

    let r = hofq(&["core", "list", "--format", "json"]);
    assert_eq!(r.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 4);

    let r = hofq(&["core", "paths", "--mode", "A"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("  16 : 16 -> 2 -> terminal 2 [valid]\n"));
    assert!(r.out.ends_with("invalid witnesses: 0\n"));

    let r = hofq(&["audit", "edges"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(r.out.matches("unrealizable edges: 0\n").count(), 2);
}

#[test]
fn divergence_reports_are_advisory_unless_strict() {
    let r = hofq(&["supports"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("Mode A supports (computed vs bundled):"));
    assert_eq!(hofq(&["supports", "--strict"]).code, EXIT_FAILED);

    let r = hofq(&["audit", "insensitive", "--mode", "b"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.out.contains("non-extendable: "));
    assert_eq!(hofq(&["audit", "insensitive", "--strict"]).code, EXIT_FAILED);
}

#[test]
fn dot_exports() {
    let r = hofq(&["model", "dot"]);
    assert!(r.out.starts_with("digraph compatibility {"));
    assert_eq!(r.out.matches(" -> ").count(), 34);
    let r = hofq(&["model", "dot", "--scope", "states", "--format", "dot"]);
    assert!(r.out.starts_with("digraph transitions {"));
    assert_eq!(r.out.matches(" -> ").count(), 37);
}

#[test]
fn repeated_runs_are_identical() {
    for args in [
        &["checkall", "--format", "json"][..],
        &["supports", "--format", "json"],
        &["audit", "insensitive"],
        &["core", "paths", "--format", "json"],
        &["model", "dot", "--scope", "contexts"],
    ] {
        assert_eq!(hofq(args).out, hofq(args).out, "{args:?}");
    }
}
