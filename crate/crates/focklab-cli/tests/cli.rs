//! End-to-end tests of the binary: golden outputs, the JSON encodings and
//! the exit-code contract (0 success, 1 verification failure, 2 usage/parse
//! error).

use std::process::{Command, Output};

fn focklab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_focklab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).trim_end().to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

#[test]
fn act_reproduces_the_reference_bead_moves() {
    let out = focklab(&["act", "--expr", "alpha(2)", "--state", "(4,3,3,1,1);-1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "-|(4,2,2,1,1);-1> + |(4,3,1,1,1);-1> - |(4,3,3);-1>"
    );
}

#[test]
fn act_bracket_is_the_identity_on_opposite_modes() {
    let out = focklab(&[
        "act",
        "--expr",
        "[alpha(1), alpha(-1)]",
        "--state",
        "(3,1);-2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "|(3,1);-2>");
}

#[test]
fn act_in_the_q_ring() {
    let out = focklab(&[
        "act", "--expr", "Fq(1)", "--state", "(1);0", "--level", "2", "--ring", "q",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q*|(1,1);0> + |(2);0>");
}

#[test]
fn act_json_encoding() {
    let out = focklab(&["act", "--expr", "alpha(1)", "--state", "(1);0", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([{"state": {"lambda": [], "charge": 0}, "coeff": "1"}])
    );
}

#[test]
fn parse_errors_exit_two_with_an_offset() {
    let out = focklab(&["act", "--expr", "alpha(2) @", "--state", "();0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("byte 9"), "stderr: {}", stderr(&out));

    let out = focklab(&["act", "--expr", "psi(4/2)", "--state", "();0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("even numerator"));
}

#[test]
fn missing_level_and_ring_mismatch_exit_two() {
    let out = focklab(&["act", "--expr", "E(0)", "--state", "();0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--level"));

    let out = focklab(&["act", "--expr", "Fq(0)", "--state", "();0", "--level", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--ring q"));
}

#[test]
fn convert_state_to_maya_and_back() {
    let out = focklab(&["convert", "--state", "(4,3,3,1,1);-1", "--to", "maya"]);
    assert!(out.status.success());
    let json = stdout(&out);
    assert_eq!(json, r#"{"window_lo":-11,"blacks":[-9,-7,-1,1,5]}"#);

    let out = focklab(&["convert", "--maya", &json, "--to", "state"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "(4,3,3,1,1);-1");
}

#[test]
fn convert_to_wedge_prefix() {
    let out = focklab(&[
        "convert",
        "--state",
        "(4,3,3,1,1);-1",
        "--to",
        "wedge",
        "--count",
        "6",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[5/2, 1/2, -1/2, -7/2, -9/2, -13/2]");
}

#[test]
fn convert_rejects_beads_below_the_window() {
    let out = focklab(&[
        "convert",
        "--maya",
        r#"{"window_lo":1,"blacks":[-1]}"#,
        "--to",
        "state",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("below window"));
}

#[test]
fn character_polynomials() {
    let out = focklab(&["chi", "--partition", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1/2*x1^2 + x2");
    let out = focklab(&["chi", "--partition", "1,1"]);
    assert_eq!(stdout(&out), "1/2*x1^2 - x2");
    let out = focklab(&["chi", "--partition", ""]);
    assert_eq!(stdout(&out), "1");
}

#[test]
fn schur_in_two_variables() {
    let out = focklab(&["schur", "--partition", "2", "--vars", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "y1^2 + y1*y2 + y2^2");
    let out = focklab(&["schur", "--partition", "1", "--vars", "2"]);
    assert_eq!(stdout(&out), "y1 + y2");
}

#[test]
fn bf_check_matches_on_the_reference_mode() {
    let out = focklab(&["bf-check", "--m", "7/2", "--state", "(1);2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("|(1,1);3>"));
    assert!(text.contains("MATCH"));

    let out = focklab(&[
        "bf-check", "--m", "7/2", "--state", "(1,1);3", "--star", "--json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["match"], serde_json::json!(true));
}

#[test]
fn mm_act_prints_q_coefficients() {
    let out = focklab(&["mm-act", "--level", "2", "--op", "F1", "--state", "(1);0"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "q*|(1,1);0> + |(2);0>");

    let out = focklab(&["mm-act", "--level", "2", "--op", "X1", "--state", "(1);0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_and_exit_codes() {
    let out = focklab(&["verify", "--suite", "bijection", "--cases", "300"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("0 failures"));

    let out = focklab(&[
        "verify",
        "--suite",
        "heisenberg",
        "--max-size",
        "3",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "heisenberg");
    assert_eq!(v["failures"], serde_json::json!([]));

    let out = focklab(&["verify", "--suite", "no-such-suite"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown suite"));
}

#[test]
fn worker_count_env_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_focklab"))
        .env("FOCKLAB_THREADS", "1")
        .args(["verify", "--suite", "mm-q1", "--max-size", "3"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(0));
}
