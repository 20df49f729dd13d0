//! End-to-end checks on the installed binary: worked examples, exit-code
//! contract, determinism, and atomic output.

use std::process::{Command, Output};

use serde_json::Value;

fn bargmann(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bargmann"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

const FOCK1: &str = r#"{"type":"fock","params":{"n":1},"truncation":8}"#;

#[test]
fn transform_of_the_first_excited_state_is_one_quarter_at_two() {
    let out = bargmann(&["transform", "--state", FOCK1, "--at", "2+0i"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "re_w,im_w,re_value,im_value,error_estimate"
    );
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!((row[0], row[1]), (2.0, 0.0));
    assert!((row[2] - 0.25).abs() < 1e-10, "f(2) = {}", row[2]);
    assert!(row[3].abs() < 1e-10);
}

#[test]
fn verify_roundtrip_with_seed_seven_passes() {
    let out = bargmann(&["verify", "--suite", "roundtrip", "--seed", "7"]);
    assert!(out.status.success(), "{out:?}");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["all_pass"], Value::Bool(true));
    assert!(doc["checks"].as_array().unwrap().len() >= 3);
}

#[test]
fn conjugate_propagator_at_time_zero_is_the_bare_pole() {
    let out = bargmann(&[
        "propagate",
        "--kind",
        "ho-conjugate",
        "--z0",
        "1+0i",
        "--w",
        "2+0i",
        "--t",
        "0",
    ]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(
        text.lines().next().unwrap(),
        "t,re_arg,im_arg,re_value,im_value"
    );
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    // 1 / (w - z0) = 1 at w = 2, z0 = 1.
    assert_eq!(row, vec![0.0, 2.0, 0.0, 1.0, 0.0]);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "inner",
        "--left",
        r#"{"type":"coherent","params":{"z0":{"re":0.4,"im":-0.3}},"truncation":10}"#,
        "--right",
        FOCK1,
    ];
    let a = bargmann(&args);
    let b = bargmann(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_descriptors_exit_with_code_two() {
    let out = bargmann(&["transform", "--state", r#"{"type":"fock""#, "--at", "1+0i"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
    let out = bargmann(&["transform", "--state", FOCK1, "--at", "not-a-number"]);
    assert_eq!(out.status.code(), Some(2), "{out:?}");
}

#[test]
fn evaluation_inside_the_source_disc_exits_with_code_three() {
    let out = bargmann(&[
        "transform",
        "--state",
        r#"{"type":"coherent","params":{"z0":{"re":2.0,"im":0.0}},"truncation":24}"#,
        "--at",
        "1+0i",
    ]);
    assert_eq!(out.status.code(), Some(3), "{out:?}");
    assert!(String::from_utf8(out.stderr)
        .unwrap()
        .contains("convergence"));
}

#[test]
fn output_flag_writes_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = bargmann(&[
        "transform",
        "--state",
        FOCK1,
        "--at",
        "2+0i",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{out:?}");
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("re_w,im_w,"));
    // The temp staging file must be gone after the rename.
    assert!(!path.with_file_name("table.csv.tmp").exists());
}

#[test]
fn inner_reports_all_four_routes_in_agreement() {
    let out = bargmann(&[
        "inner",
        "--left",
        r#"{"type":"coherent","params":{"z0":{"re":0.5,"im":0.2}},"truncation":14}"#,
        "--right",
        r#"{"type":"coeffs","params":{"values":[{"re":0.3},{"re":0.0,"im":0.8},{"re":-0.1}]}}"#,
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in ["value_series", "value_double", "value_line", "value_mixed"] {
        assert!(doc[key]["re"].is_number(), "missing {key}");
    }
    assert!(doc["max_disagreement"].as_f64().unwrap() < 1e-6);
}

#[test]
fn semiclassical_oscillator_matches_its_oracle() {
    let out = bargmann(&[
        "semiclassical",
        "--hamiltonian",
        "ho",
        "--omega",
        "1.3",
        "--zi",
        "0.4+0.1i",
        "--zfstar",
        "0.7-0.2i",
        "--t",
        "0.9",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["error"].as_f64().unwrap() < 1e-10);
    assert!(doc["trajectory_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(doc["boundary"]["kind"], "bargmann");
}

#[test]
fn semiclassical_conjugate_side_matches_the_descent_form() {
    let out = bargmann(&[
        "semiclassical",
        "--hamiltonian",
        "quadratic",
        "--alpha",
        "1.0",
        "--beta",
        "0.3",
        "--gamma",
        "0.3",
        "--zi",
        "0.4+0i",
        "--w",
        "3.3+1.0i",
        "--t",
        "1.0",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["error"].as_f64().unwrap() < 1e-10, "{}", doc["error"]);
    let m = &doc["trajectories"][0]["m"];
    assert!(m["vv"]["re"].is_number());
}

#[test]
fn degenerate_conjugate_saddle_falls_back_to_the_exact_pole() {
    let out = bargmann(&[
        "semiclassical",
        "--hamiltonian",
        "ho",
        "--zi",
        "1+0i",
        "--w",
        "2+0i",
        "--t",
        "0.5",
    ]);
    assert!(out.status.success(), "{out:?}");
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["note"].as_str().unwrap().contains("degenerate"));
    assert!(doc["error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn invert_route_agreement_shows_in_the_error_column() {
    let state = r#"{"type":"coherent","params":{"z0":{"re":0.5,"im":0.5}},"truncation":16}"#;
    for route in ["termwise", "contour"] {
        let out = bargmann(&[
            "invert", "--state", state, "--at", "0.3+0.2i", "--route", route,
        ]);
        assert!(out.status.success(), "{route}: {out:?}");
        let text = stdout(&out);
        let row: Vec<f64> = text
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|c| c.parse().unwrap())
            .collect();
        let tol = if route == "termwise" { 1e-12 } else { 1e-6 };
        assert!(row[4] < tol, "{route}: residual {}", row[4]);
    }
}

#[test]
fn propagate_sweeps_emit_one_row_per_time() {
    let out = bargmann(&[
        "propagate",
        "--kind",
        "ho-bargmann",
        "--z0",
        "0.5+0i",
        "--zstar",
        "1+0i",
        "--t",
        "0",
        "--t",
        "0.5",
        "--t",
        "1.0",
    ]);
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out).lines().count(), 4);
}
