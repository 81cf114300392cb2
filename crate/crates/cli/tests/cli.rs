//! End-to-end tests driving the compiled binary.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use moe_core::bits::BitString;
use moe_core::games::{strategy_to_json, SemiClassicalStrategy, Strategy};
use moe_core::states::AttackVariant;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_moe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 output")
}

fn scratch(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("moe-cli-{}-{name}", std::process::id()));
    fs::write(&path, content).expect("scratch file writes");
    path
}

/// Parses CSV output into (header, rows).
fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header: Vec<String> = lines.next().expect("header").split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn column(header: &[String], rows: &[Vec<String>], name: &str) -> Vec<String> {
    let idx = header.iter().position(|h| h == name).unwrap_or_else(|| {
        panic!("column {name} missing from {header:?}");
    });
    rows.iter().map(|r| r[idx].clone()).collect()
}

const COS2_PI_8: f64 = 0.8535533905932737;

#[test]
fn verify_attack_deviations_are_tiny_for_both_variants() {
    for variant in ["phi", "psi"] {
        let out = run(&["verify-attack", "--n-max", "3", "--variant", variant]);
        assert_eq!(out.status.code(), Some(0), "variant {variant}");
        let (header, rows) = parse_csv(&stdout(&out));
        assert_eq!(header.join(","), "n,y,theta,predicted_bit,bias,deviation");
        // 2 choices of y and 2^n bases per n.
        assert_eq!(rows.len(), 2 * (2 + 4 + 8));
        for dev in column(&header, &rows, "deviation") {
            assert!(dev.parse::<f64>().unwrap() < 1e-9, "deviation {dev}");
        }
    }
}

#[test]
fn corrupted_state_fails_verification_with_exit_two() {
    let out = run(&["verify-attack", "--n-max", "1", "--corrupt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn empty_range_prints_only_the_header() {
    let out = run(&["verify-attack", "--n-max", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n,y,theta,predicted_bit,bias,deviation\n");
}

#[test]
fn bounds_sweep_keeps_the_format_contract() {
    let out = run(&["bounds-sweep", "--n-max", "2", "--trials", "10", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("n,c_id,w2_norm,bound_exact,bound_paper,pass\n"));
    let (header, rows) = parse_csv(&text);
    assert_eq!(rows.len(), 16 + 10);
    for pass in column(&header, &rows, "pass") {
        assert_eq!(pass, "true");
    }
}

#[test]
fn game_reproduces_the_attack_value() {
    let s = SemiClassicalStrategy::xor_attack(&BitString::zeros(4), AttackVariant::Phi).unwrap();
    let path = scratch("attack4.json", &strategy_to_json(&Strategy::SemiClassical(s)));
    let args = [
        "game",
        "--strategy",
        path.to_str().unwrap(),
        "--trials",
        "1000000",
        "--seed",
        "11",
    ];
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&stdout(&out));
    let exact: f64 = column(&header, &rows, "exact_value")[0].parse().unwrap();
    let z: f64 = column(&header, &rows, "z_score")[0].parse().unwrap();
    assert!((exact - COS2_PI_8).abs() < 1e-9);
    assert!(z.abs() < 4.0, "z = {z}");

    // Same flags, byte-identical output.
    let again = run(&args);
    assert_eq!(out.stdout, again.stdout);
    let _ = fs::remove_file(path);
}

#[test]
fn game_evaluates_the_scalar_inner_product_case() {
    let path = scratch(
        "gl1.json",
        r#"{"variant":"gl","n":1,"alice_state":[[1.0,0.0],[0.0,0.0]],"answer_table_hex":"0"}"#,
    );
    let out = run(&["game", "--strategy", path.to_str().unwrap(), "--trials", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(column(&header, &rows, "exact_value")[0], "8.75000000000000e-1");
    let _ = fs::remove_file(path);
}

#[test]
fn malformed_strategy_exits_one_with_position_diagnostics() {
    let path = scratch("bad.json", r#"{"variant":"gl""#);
    let out = run(&["game", "--strategy", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr).to_string();
    assert!(err.contains("line 1"), "stderr: {err}");
    let _ = fs::remove_file(path);
}

#[test]
fn brute_force_reports_known_optima() {
    let out = run(&["brute-force", "xor", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = parse_csv(&stdout(&out));
    let value: f64 = column(&header, &rows, "best_value")[0].parse().unwrap();
    assert!((value - COS2_PI_8).abs() < 1e-9);

    let out = run(&["brute-force", "gl", "--n", "1"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let value: f64 = column(&header, &rows, "best_value")[0].parse().unwrap();
    assert!((value - (1.0 + COS2_PI_8) / 2.0).abs() < 1e-9);

    let out = run(&["brute-force", "alternating", "--n", "1", "--trials", "4", "--seed", "9"]);
    let (header, rows) = parse_csv(&stdout(&out));
    let value: f64 = column(&header, &rows, "best_value")[0].parse().unwrap();
    assert!((value - (1.0 + COS2_PI_8) / 2.0).abs() < 1e-9);
}

#[test]
fn decomp_residual_passes_for_a_table_strategy() {
    let path = scratch(
        "gl2.json",
        r#"{"variant":"gl","n":2,"alice_state":[[1.0,0.0],[0.0,0.0],[0.0,0.0],[0.0,0.0]],"answer_table_hex":"93a6"}"#,
    );
    let out = run(&["decomp-residual", "--strategy", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(column(&header, &rows, "pass")[0], "true");
    let residual: f64 = column(&header, &rows, "residual")[0].parse().unwrap();
    assert!(residual < 1e-9);
    let _ = fs::remove_file(path);
}

#[test]
fn conjecture_total_stays_within_the_masking_envelope() {
    let strategy = scratch(
        "conj_strategy.json",
        r#"{"variant":"gl","n":1,"alice_state":[[0.6,0.0],[0.0,0.8]],"answer_table_hex":"6"}"#,
    );
    let slices = scratch(
        "conj_slices.json",
        r#"{"n":1,"dim_bc":1,"vectors":[[[0.6,0.0]],[[0.0,0.8]]]}"#,
    );
    let out = run(&[
        "conjecture",
        "--strategy",
        strategy.to_str().unwrap(),
        "--slices",
        slices.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let (header, rows) = parse_csv(&stdout(&out));
    assert_eq!(column(&header, &rows, "within_envelope")[0], "true");
    let term1: f64 = column(&header, &rows, "term1")[0].parse().unwrap();
    assert!(term1 <= 0.5 + 1e-12);
    let _ = fs::remove_file(strategy);
    let _ = fs::remove_file(slices);
}

#[test]
fn out_flag_writes_the_file_and_keeps_stdout_empty() {
    let path = std::env::temp_dir().join(format!("moe-cli-{}-probs.csv", std::process::id()));
    let out = run(&["prob-s", "--n-max", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = fs::read_to_string(&path).unwrap();
    assert!(written.contains("7/16"));
    let _ = fs::remove_file(path);
}

#[test]
fn json_format_emits_a_parseable_document() {
    let out = run(&["verify-attack", "--n-max", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["columns"][0], "n");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert!(doc["rows"][0][4].as_f64().unwrap() > 0.85);
}

#[test]
fn oversized_ranges_are_input_errors() {
    for args in [
        vec!["verify-attack", "--n-max", "9"],
        vec!["bounds-sweep", "--n-max", "6"],
        vec!["brute-force", "xor", "--n", "5"],
        vec!["brute-force", "gl", "--n", "3"],
        vec!["prob-s", "--n-max", "11"],
        vec!["parseval", "--n", "13"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
        assert!(!out.stderr.is_empty(), "args {args:?}");
    }
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    let out = run(&["verify-attack", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn sweep_reruns_are_byte_identical() {
    let args = ["bounds-sweep", "--n-max", "3", "--trials", "8", "--seed", "42"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
