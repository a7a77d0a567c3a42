use std::path::PathBuf;
use std::process::Command;

use syzygies::cli::main_with_args;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("syzygies").chain(args.iter().copied()).map(String::from);
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_file(tag: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("syzygies-cli-{}-{tag}.txt", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn resolve_prints_betti_table() {
    let (code, out, _) = run(&["resolve", "--corpus", "gr25"]);
    assert_eq!(code, 0);
    assert!(out.contains("total: 1 5 5 1"), "{out}");
}

#[test]
fn kv_format() {
    let (code, out, _) = run(&["resolve", "--corpus", "rnc4", "--format", "kv"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.is_empty() || l.contains(" = ")), "{out}");
}

#[test]
fn theorem_check_exit_codes() {
    let (code, out, _) = run(&["theorem-check", "--corpus", "gr25"]);
    assert_eq!(code, 0);
    assert!(out.contains("skew-symmetric: yes"), "{out}");
    let (code, _, err) = run(&["theorem-check", "--corpus", "rnc4"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run(&["resolve", "--corpus", "no_such_entry"]).0, 2);
    assert_eq!(run(&["resolve"]).0, 2);
    assert_eq!(run(&["resolve", "--corpus", "gr25", "--input", "x.txt"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    let bad = temp_file("bad", "ring x y\nideal\nx*y +\n");
    assert_eq!(run(&["resolve", "--input", bad.to_str().unwrap()]).0, 2);
    let missing = std::env::temp_dir().join("syzygies-cli-does-not-exist.txt");
    assert_eq!(run(&["resolve", "--input", missing.to_str().unwrap()]).0, 2);
}

#[test]
fn corpus_listing_and_roundtrip() {
    let (code, out, _) = run(&["corpus"]);
    assert_eq!(code, 0);
    for name in syzygies::corpus::CORPUS_NAMES {
        assert!(out.contains(name));
    }
    let (code, text, _) = run(&["corpus", "--corpus", "dp5_surface"]);
    assert_eq!(code, 0);
    let path = temp_file("dp5", &text);
    let from_file = run(&["resolve", "--input", path.to_str().unwrap()]);
    let from_corpus = run(&["resolve", "--corpus", "dp5_surface"]);
    assert_eq!(from_file.0, 0);
    assert_eq!(from_file.1, from_corpus.1);
}

#[test]
fn syzygy_scheme_column() {
    let (code, out, _) = run(&["syzygy-scheme", "--corpus", "gr25", "--column", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("quadric count: 4 (bounds 3..=4)"), "{out}");
    assert!(out.contains("colon: x34, x24, x14, x04"), "{out}");
    let (code, out, _) = run(&["syzygy-scheme", "--corpus", "dp5_surface", "--coeffs", "0,0,0,0,1"]);
    assert_eq!(code, 0);
    assert!(out.contains("quadric count: 3"), "{out}");
    assert_eq!(run(&["syzygy-scheme", "--corpus", "gr25", "--coeffs", "1,2"]).0, 2);
}

#[test]
fn sampled_bounds_hold() {
    let (code, out, _) = run(&["theorem-check", "--corpus", "dp5_surface", "--samples", "5", "--seed", "3"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn koszul_dimension() {
    let (code, out, _) = run(&["koszul-dim", "--corpus", "gr25", "--p", "1", "--q", "1"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with('5'), "{out}");
}

#[test]
fn wedge_output_is_deterministic() {
    let a = run(&["wedge", "--corpus", "segre22", "--p", "3"]);
    let b = run(&["wedge", "--corpus", "segre22", "--p", "3"]);
    assert_eq!(a.0, 0);
    assert_eq!(a, b);
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_syzygies");
    let ok = Command::new(bin).args(["resolve", "--corpus", "ci5"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("total:  1  5 10 10  5  1"));
    let failed = Command::new(bin).args(["theorem-check", "--corpus", "veronese_proj"]).output().unwrap();
    assert_eq!(failed.status.code(), Some(1));
    let usage = Command::new(bin).args(["resolve", "--order", "weird"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let fixtures = Command::new(bin).arg("verify-fixtures").output().unwrap();
    assert_eq!(fixtures.status.code(), Some(0));
}
