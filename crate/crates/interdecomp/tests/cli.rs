//! End-to-end tests of the `interdecomp` binary: exit codes, the
//! golden-file contract (byte-identical reports run over run), and the
//! invalid-input path.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_interdecomp");

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> Vec<u8> {
    fs::read(
        PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tests/golden")
            .join(name),
    )
    .unwrap_or_else(|e| panic!("golden file {name}: {e}"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

/// (subcommand, kind, fixture, extra flags, golden, expected exit code)
const CASES: &[(&str, &str, &str, &[&str], &str, i32)] = &[
    (
        "decompose",
        "projectors",
        "fork_family.json",
        &[],
        "fork_family.report.json",
        0,
    ),
    (
        "decompose",
        "projectors",
        "planted_family.json",
        &[],
        "planted_family.report.json",
        0,
    ),
    (
        "decompose",
        "measure",
        "uniform_measure.json",
        &[],
        "uniform_measure.report.json",
        0,
    ),
    (
        "check",
        "measure",
        "coupled_measure.json",
        &[],
        "coupled_measure.report.json",
        1,
    ),
    (
        "check",
        "measure",
        "coupled_measure.json",
        &["--format", "text"],
        "coupled_measure.report.txt",
        1,
    ),
    (
        "decompose",
        "split",
        "block_sum_split.json",
        &[],
        "block_sum_split.report.json",
        0,
    ),
    (
        "decompose",
        "split",
        "perturbed_split.json",
        &[],
        "perturbed_split.report.json",
        1,
    ),
];

#[test]
fn reports_match_goldens_and_repeat_byte_identically() {
    for &(cmd, kind, input, extra, gold, code) in CASES {
        let input_path = fixture(input);
        let mut args = vec![cmd, "--kind", kind, "--input", input_path.to_str().unwrap()];
        args.extend_from_slice(extra);
        let first = run(&args);
        assert_eq!(first.status.code(), Some(code), "{cmd} {input} exit code");
        assert_eq!(
            first.stdout,
            golden(gold),
            "{cmd} {input} diverged from {gold}"
        );
        let second = run(&args);
        assert_eq!(
            first.stdout, second.stdout,
            "{cmd} {input} nondeterministic"
        );
    }
}

#[test]
fn output_flag_writes_the_same_bytes_as_stdout() {
    let out = tempfile::NamedTempFile::new().unwrap();
    let input_path = fixture("uniform_measure.json");
    let status = Command::new(BIN)
        .args([
            "decompose",
            "--kind",
            "measure",
            "--input",
            input_path.to_str().unwrap(),
            "--output",
            out.path().to_str().unwrap(),
        ])
        .status()
        .expect("binary runs");
    assert_eq!(status.code(), Some(0));
    assert_eq!(
        fs::read(out.path()).unwrap(),
        golden("uniform_measure.report.json")
    );
}

#[test]
fn check_and_decompose_agree_on_decomposable_inputs() {
    let input_path = fixture("fork_family.json");
    let input = input_path.to_str().unwrap();
    let check = run(&["check", "--kind", "projectors", "--input", input]);
    let decompose = run(&["decompose", "--kind", "projectors", "--input", input]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(check.stdout, decompose.stdout);
}

#[test]
fn invalid_inputs_exit_two_with_error_reports() {
    // Structurally invalid: a non-idempotent "projector".
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(
        bad,
        r#"{{"poset": {{"elements": ["a"], "leq": []}}, "dim": 1, "projectors": {{"a": [["2"]]}}}}"#
    )
    .unwrap();
    let out = run(&[
        "check",
        "--kind",
        "projectors",
        "--input",
        bad.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "invalid-input");
    assert!(report["error"].is_string());
    assert!(report["decomposition"].is_null());

    // Unparseable JSON.
    let mut garbage = tempfile::NamedTempFile::new().unwrap();
    write!(garbage, "not json").unwrap();
    let out = run(&[
        "check",
        "--kind",
        "measure",
        "--input",
        garbage.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));

    // Missing file.
    let out = run(&[
        "check",
        "--kind",
        "split",
        "--input",
        "/nonexistent/interdecomp-input.json",
    ]);
    assert_eq!(out.status.code(), Some(2));

    // A measure whose declared kind mismatches the document.
    let input_path = fixture("fork_family.json");
    let out = run(&[
        "check",
        "--kind",
        "measure",
        "--input",
        input_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}
