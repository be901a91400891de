use std::path::Path;
use std::process::Command;

use triposlab::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_OK};
use triposlab::coded_tripos::ch2;
use triposlab::fixture::Fixture;
use triposlab::report::{LawReport, Status};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("triposlab").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixtures_dir() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = invoke(&["fixtures", path(dir.path())]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 5);
    dir
}

#[test]
fn laws_on_ch2() {
    let dir = fixtures_dir();
    let file = dir.path().join("ch2.json");
    let (code, out, _) = invoke(&["laws", path(&file), "--max-ctx", "2"]);
    assert_eq!(code, EXIT_OK);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.status, Status::Pass);
    assert!(report.entry("beck_chevalley").is_some());
}

#[test]
fn reports_are_byte_identical() {
    let dir = fixtures_dir();
    let file = dir.path().join("ch3.json");
    let args = ["laws", path(&file), "--samples", "30", "--seed", "7"];
    assert_eq!(invoke(&args).1, invoke(&args).1);
}

#[test]
fn iso_on_ch3_and_b4() {
    let dir = fixtures_dir();
    let (code, out, _) = invoke(&["iso", path(&dir.path().join("ch3.json"))]);
    assert_eq!(code, EXIT_OK);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.entry("iso.embedding").unwrap().status, Status::Pass);
    assert_eq!(
        report.entry("transfer.membership_forall").unwrap().status,
        Status::Pass
    );

    let (code, out, _) = invoke(&["iso", path(&dir.path().join("b4.json"))]);
    assert_eq!(code, EXIT_OK);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(
        report.entry("transfer.membership_forall").unwrap().status,
        Status::Skipped
    );
}

#[test]
fn extract_then_validate() {
    let dir = fixtures_dir();
    let out_file = dir.path().join("extracted.json");
    let (code, out, _) = invoke(&[
        "extract",
        path(&dir.path().join("b4.json")),
        "-o",
        path(&out_file),
    ]);
    assert_eq!(code, EXIT_OK);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.facts["is_classical"], true);
    let (code, out, _) = invoke(&["validate", path(&out_file)]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("\"algebra\""));
    let (code, _, _) = invoke(&["laws", path(&out_file)]);
    assert_eq!(code, EXIT_OK);
}

#[test]
fn induce_and_roundtrip() {
    let dir = fixtures_dir();
    let induced = dir.path().join("induced.json");
    let (code, _, _) = invoke(&[
        "induce",
        path(&dir.path().join("chain3.json")),
        "-o",
        path(&induced),
    ]);
    assert_eq!(code, EXIT_OK);
    let (code, _, _) = invoke(&["laws", path(&induced), "--samples", "0"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = invoke(&[
        "roundtrip",
        path(&dir.path().join("chain2.json")),
        "--samples",
        "0",
    ]);
    assert_eq!(code, EXIT_OK);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(
        report.entry("roundtrip.px_iso").unwrap().status,
        Status::Pass
    );
}

#[test]
fn failing_laws_exit_one_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    let bad = ch2().mutate(|tb| tb.join[0b11] = 0).unwrap();
    Fixture::tripos("bad", &bad).save(&file).unwrap();
    let (code, out, _) = invoke(&["laws", path(&file)]);
    assert_eq!(code, EXIT_FAIL);
    let report: LawReport = serde_json::from_str(&out).unwrap();
    assert_eq!(
        report.entry("exists.adjunction").unwrap().status,
        Status::Fail
    );
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("garbage.json");
    std::fs::write(&file, "garbage").unwrap();
    let (code, out, err) = invoke(&["validate", path(&file)]);
    assert_eq!(code, EXIT_INPUT);
    assert!(out.is_empty());
    assert!(err.contains("parse"));

    let (code, _, err) = invoke(&["validate", path(&dir.path().join("missing.json"))]);
    assert_eq!(code, EXIT_INPUT);
    assert!(!err.is_empty());

    let (code, _, _) = invoke(&["laws"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn wrong_kind_exits_two() {
    let dir = fixtures_dir();
    let (code, _, err) = invoke(&["roundtrip", path(&dir.path().join("ch2.json"))]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("algebra"));
}

#[test]
fn binary_runs() {
    let dir = fixtures_dir();
    let status = Command::new(env!("CARGO_BIN_EXE_triposlab"))
        .args(["validate", path(&dir.path().join("ch2.json"))])
        .output()
        .unwrap();
    assert!(status.status.success());
    let status = Command::new(env!("CARGO_BIN_EXE_triposlab"))
        .arg("validate")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(EXIT_INPUT));
    let help = Command::new(env!("CARGO_BIN_EXE_triposlab"))
        .arg("--help")
        .output()
        .unwrap();
    assert!(help.status.success());
    assert!(String::from_utf8_lossy(&help.stdout).contains("roundtrip"));
}
