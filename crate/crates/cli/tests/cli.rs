use std::process::{Command, Output};

use eqec_cli::report::{SuiteReport, Verdict};

fn eqec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqec"))
        .args(args)
        .env_remove("EQEC_SEED")
        .output()
        .expect("binary runs")
}

fn json_report(out: &Output) -> SuiteReport {
    SuiteReport::from_json(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn passing_suite_exits_zero() {
    let out = eqec(&["verify", "quaternion", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("pauli_action_x"));
    assert!(text.starts_with("suite quaternion (seed 0, trials 50)"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(eqec(&["verify", "nothing"]).status.code(), Some(2));
    assert_eq!(eqec(&["verify", "linalg", "--trials", "0"]).status.code(), Some(2));
    assert_eq!(eqec(&["verify", "linalg", "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(eqec(&[]).status.code(), Some(2));
    assert_eq!(eqec(&["--help"]).status.code(), Some(0));
}

#[test]
fn failing_checks_exit_one() {
    // A tolerance below every observed rounding error fails the randomized checks.
    let out = eqec(&["verify", "quaternion", "--trials", "50", "--tol", "1e-300", "--format", "json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_report(&out).verdict, Verdict::Fail);
}

#[test]
fn json_round_trips_byte_identical() {
    let out = eqec(&["demo", "phase-failure", "--format", "structured"]);
    assert_eq!(out.status.code(), Some(0));
    let raw = String::from_utf8(out.stdout.clone()).unwrap();
    assert_eq!(json_report(&out).to_json(), raw);
}

#[test]
fn seed_from_environment_and_flag_wins() {
    let run = |env: Option<&str>, args: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_eqec"));
        cmd.args(["verify", "linalg", "--trials", "20", "--format", "json"]).args(args);
        match env {
            Some(s) => cmd.env("EQEC_SEED", s),
            None => cmd.env_remove("EQEC_SEED"),
        };
        json_report(&cmd.output().unwrap()).seed
    };
    assert_eq!(run(None, &[]), 0);
    assert_eq!(run(Some("17"), &[]), 17);
    assert_eq!(run(Some("17"), &["--seed", "3"]), 3);
}

#[test]
fn same_seed_same_report() {
    let args = ["simulate", "r3", "--seed", "9", "--trials", "100", "--format", "json"];
    let mut a = json_report(&eqec(&args));
    let mut b = json_report(&eqec(&args));
    a.wall_time.clear();
    b.wall_time.clear();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hopf.json");
    let out = eqec(&["demo", "hopf", "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r = SuiteReport::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r.suite, "demo hopf");
    assert_eq!(r.checks.len(), 4);
}

#[test]
fn unwritable_out_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("r.json");
    let out = eqec(&["demo", "hopf", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn effective_count_lists_seven_classes() {
    let out = eqec(&["demo", "effective-count"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("note: class").count(), 7);
    assert!(text.contains("class {Z@0, Z@1, Z@2}"));
}
