//! End-to-end runs of the latwork binary: every subcommand, the exit
//! code contract, and the machine-readable error records on stderr.

use std::fs;
use std::io::Write as _;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use latwork::dataset::ReferenceDataset;
use latwork::io::render_count_table;

/// A vi table whose growth recurrence is f(n) = f(n-1) + f(n-2).
const FIB_TABLE: &str = "1\t1\n2\t1\n3\t1\n";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_latwork"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_on_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .take()
        .expect("stdin is piped")
        .write_all(input.as_bytes())
        .expect("stdin accepts input");
    child.wait_with_output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, got {:?}; stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("temp path is utf-8")
}

#[test]
fn gen_piped_into_classify_counts_the_gluing_pieces() {
    let listing = stdout_of(&run(&["gen", "6", "--family", "modular"]));
    let out = run_on_stdin(&["classify", "--pieces"], &listing);
    assert_eq!(stdout_of(&out), "1\n");
}

#[test]
fn classify_prints_a_row_per_record_and_a_summary_footer() {
    let dir = tempfile::tempdir().unwrap();
    let listing = dir.path().join("modular6.latf");
    run(&["gen", "6", "--family", "modular", "--out", path_str(&listing)]);
    let text = stdout_of(&run(&["classify", path_str(&listing)]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "# idx\tn\tgraded\tmodular\tsemimod\tdistrib\tvi\tpiece\theight\tnecks"
    );
    assert_eq!(lines.len(), 10, "header, eight records, footer");
    assert_eq!(
        lines[9],
        "# total 8  graded 8  modular 8  semimodular 8  distributive 5  vi 2  piece 1"
    );
}

#[test]
fn gen_output_is_deterministic() {
    let first = stdout_of(&run(&["gen", "9", "--family", "semimodular"]));
    let second = stdout_of(&run(&["gen", "9", "--family", "semimodular"]));
    assert_eq!(first, second);
    assert!(first.starts_with("LATF 1\n"));
}

#[test]
fn root_brackets_the_growth_rate_of_the_bundled_vi_table() {
    let dir = tempfile::tempdir().unwrap();
    let data = ReferenceDataset::load().expect("bundled data loads");
    let table = dir.path().join("modular-vi.tsv");
    fs::write(&table, render_count_table(&data.modular_vi)).unwrap();
    let text = stdout_of(&run(&[
        "root",
        "--table",
        path_str(&table),
        "--family",
        "modular",
        "--N",
        "30",
        "--tol",
        "1e-6",
    ]));
    let mut lines = text.lines();
    let bracket = lines.next().unwrap();
    assert!(
        bracket.starts_with("dominant root in [2.272651"),
        "got: {bracket}"
    );
    assert!(lines.next().unwrap().starts_with("exact bracket ["));
}

#[test]
fn certify_writes_a_certificate_that_verify_accepts() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let cert = dir.path().join("fib.cert");
    let out = run(&[
        "certify",
        "--table",
        path_str(&table),
        "--shape",
        "vsum",
        "--c",
        "3/2",
        "--out",
        path_str(&cert),
    ]);
    assert_eq!(
        stdout_of(&out),
        "certified f(n) >= 1.5000^n for all n >= 11\n"
    );
    let out = run(&["verify", path_str(&cert)]);
    assert_eq!(
        stdout_of(&out),
        "pass: f(n) >= 1.5000^n for all n >= 11, window of 2 values checked exactly\n"
    );
}

#[test]
fn verify_flags_a_doctored_window_value() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let cert = dir.path().join("fib.cert");
    run(&[
        "certify",
        "--table",
        path_str(&table),
        "--shape",
        "vsum",
        "--c",
        "3/2",
        "--out",
        path_str(&cert),
    ]);
    let text = fs::read_to_string(&cert).unwrap();
    assert!(text.contains("window 11 89"), "got: {text}");
    fs::write(&cert, text.replace("window 11 89", "window 11 88")).unwrap();
    let out = run(&["verify", path_str(&cert)]);
    assert_eq!(exit_code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("fail:"));
    assert!(stderr_of(&out).contains("\"kind\":\"check-failed\""));
}

#[test]
fn verify_reports_structural_damage_as_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let cert = dir.path().join("fib.cert");
    run(&[
        "certify",
        "--table",
        path_str(&table),
        "--shape",
        "vsum",
        "--c",
        "3/2",
        "--out",
        path_str(&cert),
    ]);
    let text = fs::read_to_string(&cert).unwrap();
    let broken: String = text
        .lines()
        .filter(|l| *l != "window 11 89")
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(&cert, broken).unwrap();
    let out = run(&["verify", path_str(&cert)]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("\"kind\":\"parse\""));
}

#[test]
fn a_failed_certify_leaves_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let cert = dir.path().join("fib.cert");
    // 2 is past the dominant root, so the polynomial check fails.
    let out = run(&[
        "certify",
        "--table",
        path_str(&table),
        "--shape",
        "vsum",
        "--c",
        "2",
        "--out",
        path_str(&cert),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("\"kind\":\"certify\""));
    assert!(!cert.exists(), "failed run must not leave an output file");
}

#[test]
fn the_enumeration_cap_env_var_gates_gen() {
    let out = bin()
        .args(["gen", "11", "--family", "modular"])
        .env("LATWORK_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(exit_code(&out), 2);
    let record = stderr_of(&out);
    assert!(record.contains("\"kind\":\"usage\""), "got: {record}");
    assert!(record.contains("LATWORK_ENUM_CAP"), "got: {record}");

    let out = bin()
        .args(["gen", "11", "--family", "modular"])
        .env("LATWORK_ENUM_CAP", "11")
        .output()
        .unwrap();
    let text = stdout_of(&out);
    assert_eq!(text.lines().count(), 1 + 343, "header plus 343 records");
}

#[test]
fn repro_runs_a_single_named_check() {
    let out = run(&["repro", "--only", "total-modular-30"]);
    let text = stdout_of(&out);
    assert!(text.contains("PASS total-modular-30"), "got: {text}");
    assert!(
        text.contains("1 checks: 1 passed, 0 failed, 0 skipped"),
        "got: {text}"
    );
}

#[test]
fn sum_stacks_records_and_decompose_splits_them_back() {
    let dir = tempfile::tempdir().unwrap();
    let two = dir.path().join("two.latf");
    run(&["gen", "2", "--out", path_str(&two)]);
    assert_eq!(fs::read_to_string(&two).unwrap(), "LATF 1\n2;1;\n");
    let out = run(&["sum", path_str(&two), path_str(&two)]);
    assert_eq!(stdout_of(&out), "LATF 1\n3;1;2;\n");
    let three = dir.path().join("three.latf");
    fs::write(&three, out.stdout).unwrap();
    let out = run(&["decompose", path_str(&three)]);
    assert_eq!(stdout_of(&out), "LATF 1\n2;1;\n2;1;\n");
}

#[test]
fn sum2_skips_pairs_without_a_two_element_interface() {
    let dir = tempfile::tempdir().unwrap();
    let four = dir.path().join("four.latf");
    run(&["gen", "4", "--out", path_str(&four)]);
    let out = run(&["sum2", path_str(&four), path_str(&four)]);
    // Of the four pairs only square over square fits, and both of its
    // matchings give the square back.
    assert_eq!(stdout_of(&out), "LATF 1\n4;1,2;3;3;\n");
    assert!(stderr_of(&out).contains("skipped 3 pair(s)"));
}

#[test]
fn recur_evaluates_the_sequence_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let text = stdout_of(&run(&[
        "recur",
        "--table",
        path_str(&table),
        "--eval",
        "10",
    ]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "shape vsum, order 2, horizon 3");
    assert_eq!(lines[4], "4\t3");
    assert_eq!(lines[10], "10\t55");
}

#[test]
fn a_missing_input_file_is_an_io_error() {
    let out = run(&["root", "--table", "/nonexistent/table.tsv"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("\"kind\":\"io\""));
}

#[test]
fn a_non_positive_tolerance_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("fib.tsv");
    fs::write(&table, FIB_TABLE).unwrap();
    let out = run(&["root", "--table", path_str(&table), "--tol", "0"]);
    assert_eq!(exit_code(&out), 2);
    assert!(stderr_of(&out).contains("\"kind\":\"usage\""));
}
