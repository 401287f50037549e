use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn takiff(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_takiff")).args(args).output().expect("run takiff")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

fn statuses(r: &Value, status: &str) -> usize {
    r["checks"].as_array().unwrap().iter().filter(|c| c["status"] == status).count()
}

#[test]
fn verify_axioms_passes() {
    let out = takiff(&["verify", "axioms", "--family", "gamma", "--lambda", "1", "--a", "0", "--b", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["suite"], "axioms");
    assert_eq!(statuses(&r, "PASS"), 15);
}

#[test]
fn negative_values_and_fractions_parse() {
    let out = takiff(&["verify", "axioms", "--family", "theta", "--lambda", "-3/2", "--a", "-2", "--b", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["config"]["lambda"], "-3/2");
}

#[test]
fn act_prints_polynomial() {
    let out = takiff(&["act", "--family", "gamma", "--expr", "h", "--target", "hb^2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "h*hb^2");
}

#[test]
fn bad_expression_exits_two() {
    let out = takiff(&["act", "--family", "gamma", "--expr", "e*q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn unknown_suite_is_an_error_record() {
    let out = takiff(&["verify", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(statuses(&report(&out), "ERROR"), 1);
}

#[test]
fn params_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("job.json");
    fs::write(&path, r#"{"family": "omega", "lambda": "2", "a": "1", "beta": "hb"}"#).unwrap();
    let p = path.to_str().unwrap();
    let out = takiff(&["verify", "omega-constraint", "--params", p, "--lambda", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["config"]["lambda"], "1");
    assert_eq!(r["data"]["alpha"], "2 + hb");

    fs::write(&path, r#"{"family": "gamma", "colour": "red"}"#).unwrap();
    assert_eq!(takiff(&["verify", "axioms", "--params", p]).status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout_and_runs_repeat_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["singular", "--eta", "0", "--theta", "2", "--max-level", "3"];
    let first = takiff(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, takiff(&args).stdout);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    let written = takiff(&with_out);
    assert!(written.stdout.is_empty());
    assert_eq!(fs::read(&path).unwrap(), first.stdout);
}

#[test]
fn induced_and_whittaker_subcommands() {
    let out = takiff(&["induced", "verify", "--family", "gamma", "--depth", "3", "--max-level", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = takiff(&[
        "verify", "whittaker", "--family", "theta", "--a", "1", "--depth", "3", "--mu", "0,0", "--mu", "1,-1",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = takiff(&["verify", "whittaker", "--family", "gamma", "--mu", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
