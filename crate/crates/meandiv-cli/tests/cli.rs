//! End-to-end tests of the `meandiv` binary: output contracts, exit codes,
//! and input validation.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn meandiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meandiv"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn problem_file(json: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(json.as_bytes()).expect("write problem");
    file
}

const GOLDEN: &str = r#"{"priors": [0.5, 0.5], "conditionals": [[0.8, 0.2], [0.2, 0.8]]}"#;

/// Parse one CSV document into header + rows.
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines
        .next()
        .expect("csv header")
        .split(',')
        .map(str::to_owned)
        .collect();
    let rows = lines
        .take_while(|l| !l.is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect();
    (header, rows)
}

#[test]
fn means_table_contains_root_square_value() {
    let out = meandiv(&["means", "4", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2.91547595"), "{text}");
    assert!(text.contains("difference"), "{text}");
    assert!(text.contains("N2N1"), "{text}");
}

#[test]
fn means_at_equal_arguments() {
    let out = meandiv(&["means", "1", "1", "--format", "csv"]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(header, vec!["type", "kind", "value"]);
    assert_eq!(rows.len(), 18);
    for row in &rows {
        let value: f64 = row[2].parse().unwrap();
        match row[0].as_str() {
            "mean" => assert_eq!(value, 1.0, "{row:?}"),
            "difference" => assert_eq!(value, 0.0, "{row:?}"),
            other => panic!("unexpected row type {other}"),
        }
    }
}

#[test]
fn means_rejects_nonpositive_with_exit_2() {
    let out = meandiv(&["means", "-1", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("'a'"), "{err}");
    assert!(err.contains("-1"), "{err}");

    let out = meandiv(&["means", "2", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("'b'"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = meandiv(&["means", "4", "1", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_kind_is_input_error() {
    let out = meandiv(&[
        "divergence",
        "--p",
        "0.5,0.5",
        "--q",
        "0.5,0.5",
        "--kinds",
        "XY",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("XY"));
}

#[test]
fn divergence_known_values() {
    let out = meandiv(&[
        "divergence",
        "--p",
        "0.8,0.2",
        "--q",
        "0.2,0.8",
        "--kinds",
        "AG,AH",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    assert_eq!(rows[0][0], "AG");
    assert!((rows[0][1].parse::<f64>().unwrap() - 0.2).abs() < 1e-12);
    assert!((rows[1][1].parse::<f64>().unwrap() - 0.36).abs() < 1e-12);
}

#[test]
fn divergence_rejects_unnormalized_input() {
    let out = meandiv(&["divergence", "--p", "0.8,0.3", "--q", "0.2,0.8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--p"));
}

#[test]
fn bounds_golden_problem_all_kinds() {
    let file = problem_file(GOLDEN);
    let out = meandiv(&[
        "bounds",
        "--problem",
        file.path().to_str().unwrap(),
        "--kinds",
        "all",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(
        header,
        vec![
            "kind",
            "divergence",
            "coefficient",
            "bound",
            "exact_error",
            "slack"
        ]
    );
    assert_eq!(rows.len(), 11);
    for row in &rows {
        let slack: f64 = row[5].parse().unwrap();
        assert!(slack >= 0.0, "{row:?}");
        let bound: f64 = row[3].parse().unwrap();
        assert!(bound <= 0.5 + 1e-15);
    }
    let ag = rows.iter().find(|r| r[0] == "AG").unwrap();
    assert!((ag[3].parse::<f64>().unwrap() - 0.4).abs() < 1e-12);
    assert!((ag[4].parse::<f64>().unwrap() - 0.2).abs() < 1e-12);
}

#[test]
fn bounds_degenerate_problem_gives_half() {
    // Equal priors and identical conditionals: posterior 1/2 everywhere,
    // every divergence vanishes, every bound is exactly 1/2.
    let file = problem_file(r#"{"priors": [0.5, 0.5], "conditionals": [[0.3, 0.7], [0.3, 0.7]]}"#);
    let out = meandiv(&[
        "bounds",
        "--problem",
        file.path().to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let (_, rows) = parse_csv(&stdout(&out));
    for row in &rows {
        let bound: f64 = row[3].parse().unwrap();
        assert!((bound - 0.5).abs() < 1e-12, "{row:?}");
    }
}

#[test]
fn bounds_chained_emits_extra_sections() {
    let file = problem_file(GOLDEN);
    let out = meandiv(&[
        "bounds",
        "--problem",
        file.path().to_str().unwrap(),
        "--chained",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let sections: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(sections.len(), 3, "{text}");
    let (header, rows) = parse_csv(sections[1]);
    assert_eq!(header[0], "chain");
    assert_eq!(rows.len(), 8);
    for row in &rows {
        let chained: f64 = row[3].parse().unwrap();
        let direct: f64 = row[4].parse().unwrap();
        assert!(direct <= chained + 1e-12, "{row:?}");
    }
    let (header, rows) = parse_csv(sections[2]);
    assert_eq!(header[0], "kind");
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert!(row[5].parse::<f64>().unwrap() >= 0.0, "{row:?}");
    }
}

#[test]
fn bounds_missing_file_is_input_error() {
    let out = meandiv(&["bounds", "--problem", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_invalid_file_names_field() {
    let file = problem_file(r#"{"priors": [0.5, 0.6], "conditionals": [[0.8, 0.2], [0.2, 0.8]]}"#);
    let out = meandiv(&["bounds", "--problem", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("priors"));

    let file = problem_file(r#"{"priors": [0.5, 0.5], "conditionals": [[0.8, 0.2], [0.2, -0.8]]}"#);
    let out = meandiv(&["bounds", "--problem", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("conditionals[1]"));
}

#[test]
fn verify_small_run_passes_and_notes_erratum() {
    let out = meandiv(&["verify", "--samples", "200", "--seed", "7"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ERRATUM"), "{text}");
    assert!(text.contains("published-constant-N2N1"), "{text}");
    assert!(text.contains("failed: 0"), "{text}");
}

#[test]
fn verify_single_sample_smoke() {
    let out = meandiv(&["verify", "--samples", "1"]);
    assert!(out.status.success());
}

#[test]
fn verify_rejects_zero_samples() {
    let out = meandiv(&["verify", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("samples"));
}

#[test]
fn verify_negative_control_exits_1() {
    let out = meandiv(&["verify", "--samples", "50", "--negative-control"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"), "{text}");
    assert!(text.contains("failed: 1"), "{text}");
}

#[test]
fn verify_json_format_is_machine_readable() {
    let out = meandiv(&["verify", "--samples", "50", "--format", "json"]);
    assert!(out.status.success());
    let outcomes: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    let list = outcomes.as_array().unwrap();
    assert_eq!(list.len(), 51);
    assert!(list.iter().all(|o| o["failures"] == 0));
}

#[test]
fn report_document_shape() {
    let file = problem_file(GOLDEN);
    let out = meandiv(&["report", "--problem", file.path().to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(doc["problem"]["priors"][0], 0.5);
    assert!((doc["exact_error"].as_f64().unwrap() - 0.2).abs() < 1e-12);
    assert_eq!(doc["bounds"].as_array().unwrap().len(), 11);
    assert_eq!(doc["chained"].as_array().unwrap().len(), 8);
    assert_eq!(doc["sharpness"].as_array().unwrap().len(), 4);
    let ag = doc["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["kind"] == "AG")
        .unwrap();
    assert!((ag["bound"].as_f64().unwrap() - 0.4).abs() < 1e-12);
}
