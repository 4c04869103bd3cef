use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cmlab_core::lab::RECORD_KEYS;

fn session(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../sessions").join(name)
}

fn cmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmlab")).args(args).output().unwrap()
}

fn cmlab_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cmlab")).args(args).env(key, value).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn records(path: &Path) -> Vec<serde_json::Map<String, serde_json::Value>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap().as_object().unwrap().clone())
        .collect()
}

fn write_session(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("s.cm");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn invariants_of_double_point() {
    let f = session("double_point.cm");
    let o = cmlab(&["invariants", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["e", "2"]), "{text}");
}

#[test]
fn check_writes_records_with_fixed_keys() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let f = session("double_point.cm");
    let o = cmlab(&["check", f.to_str().unwrap(), "--id", "P32.1", "--M", "k", "--N", "k", "--j", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let recs = records(&out);
    assert_eq!(recs.len(), 1);
    let keys: BTreeSet<&str> = recs[0].keys().map(String::as_str).collect();
    assert_eq!(keys, RECORD_KEYS.iter().copied().collect());
    assert_eq!(recs[0]["consistent"], true);
    assert_eq!(recs[0]["mode"], "certificate");
}

#[test]
fn check_without_j_scans_admissible_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.jsonl");
    let f = session("fat_plane.cm");
    let o = cmlab(&["check", f.to_str().unwrap(), "--id", "P32.1", "--M", "M", "--N", "k", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(records(&out).len() > 1);
}

#[test]
fn every_computation_record_has_fixed_keys() {
    let dir = tempfile::tempdir().unwrap();
    let f = session("node.cm");
    let keys: BTreeSet<&str> = RECORD_KEYS.iter().copied().collect();
    for args in [
        vec!["classify"],
        vec!["betti", "--module", "B", "--nmax", "4"],
        vec!["bass", "--module", "B", "--nmax", "3"],
        vec!["tor", "--M", "B", "--N", "k", "--nmax", "3"],
        vec!["ext", "--M", "k", "--N", "B", "--n", "1"],
        vec!["witness", "--id", "T41"],
    ] {
        let out = dir.path().join(format!("{}.jsonl", args[0]));
        let mut full = args.clone();
        full.extend([f.to_str().unwrap(), "--out", out.to_str().unwrap()]);
        let o = cmlab(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        for r in records(&out) {
            assert_eq!(r.keys().map(String::as_str).collect::<BTreeSet<_>>(), keys, "{args:?}");
        }
    }
}

#[test]
fn usage_errors_exit_one() {
    let f = session("double_point.cm");
    let o = cmlab(&["check", f.to_str().unwrap(), "--id", "NOPE", "--M", "k"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cmlab(&["invariants", f.to_str().unwrap(), "--module", "missing"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cmlab(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cmlab(&["invariants", "/nonexistent/file.cm"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn syntax_errors_carry_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(dir.path(), "ring R\n  vars x y\n  colour blue\nend\n");
    let o = cmlab(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn inhomogeneous_input_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_session(dir.path(), "ring R\n  vars x y\n  ideal x^2 + y\nend\n");
    let o = cmlab(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let p = write_session(dir.path(), "ring R\n  vars x y\nend\nmodule M over R\n  gendeg 0 0\n  relations\n    x, y^2\nend\n");
    let o = cmlab(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 7"), "{}", stderr(&o));
}

#[test]
fn resource_cap_exits_three() {
    let f = session("plane_square.cm");
    let o = cmlab_env(&["betti", f.to_str().unwrap(), "--module", "Q", "--nmax", "3"], "CMLAB_MAX_PAIRS", "1");
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn corpus_filter_and_explorer() {
    let o = cmlab(&["corpus", "--case", "ex-double-point"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("ex-double-point-free"));
    let o = cmlab(&["explore-q52", "--trials", "20", "--bound", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("no counterexample found"), "{}", stdout(&o));
}

#[test]
fn oracle_agreement_command() {
    let f = session("fat_plane.cm");
    let o = cmlab(&["agree", f.to_str().unwrap(), "--module", "M", "--nmax", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // a positive-dimensional ring is outside the oracle's scope
    let f = session("node.cm");
    let o = cmlab(&["agree", f.to_str().unwrap(), "--module", "B"]);
    assert_eq!(o.status.code(), Some(1));
}
