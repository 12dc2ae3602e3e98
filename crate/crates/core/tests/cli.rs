//! Black-box tests against the compiled binary.

use std::io::Write;
use std::process::{Command, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_capcalc"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = bin().args(args).output().expect("binary should run");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn emit_pipes_into_analyze() {
    let (emitted, _, code) = run(&["example", "ohta_ono", "3", "--emit"]);
    assert_eq!(code, 0);

    let mut child = bin()
        .args(["--format", "json", "analyze", "-", "--with-areas", "3,1,1,1"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(emitted.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());

    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["chern"]["coefficients"],
        serde_json::json!(["2", "1", "1", "1"])
    );
    assert_eq!(v["classification"]["uniruled"], serde_json::json!(true));
    assert_eq!(v["gs"]["feasible"], serde_json::json!(true));
}

#[test]
fn empty_file_is_an_input_error() {
    let path = std::env::temp_dir().join(format!("capcalc-empty-{}.json", std::process::id()));
    std::fs::write(&path, "").unwrap();
    let (_, stderr, code) = run(&["analyze", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());
}

#[test]
fn cotangent_json_profile() {
    let (stdout, _, code) = run(&["--format", "json", "cotangent", "--genus", "2"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["filling"]["e"], serde_json::json!(-2));
    assert_eq!(v["filling"]["sigma"], serde_json::json!(1));
    assert_eq!(v["filling"]["H1"], serde_json::json!("Z^4"));
    assert_eq!(v["complement"]["first"], serde_json::json!("2H + 2(-E8)"));
    assert_eq!(v["complement"]["second"], serde_json::json!("H"));
}

#[test]
fn output_is_deterministic() {
    let args = [
        vec!["--format", "json", "cotangent", "--genus", "5"],
        vec!["--format", "json", "example", "gay", "3", "4"],
        vec!["lattice", "enumerate", "2", "2"],
        vec!["bounds", "strong", "--e", "1", "--sigma", "0", "--b1", "2", "--b1-plus-b3", "2", "--g-max", "1", "--g-min", "0", "--b1-y", "2"],
    ];
    for a in &args {
        let first = bin().args(a).output().unwrap();
        let second = bin().args(a).output().unwrap();
        assert!(first.status.success(), "args {a:?}");
        assert_eq!(first.stdout, second.stdout, "args {a:?}");
    }
}

#[test]
fn domain_errors_exit_two() {
    let (_, stderr, code) = run(&[
        "example",
        "cp2_triangle",
        "--with-areas",
        "1,2,1",
        "--require-feasible",
    ]);
    assert_eq!(code, 2);
    assert!(!stderr.is_empty());
}

#[test]
fn usage_errors_exit_one() {
    let (_, _, code) = run(&["example", "no_such_graph"]);
    assert_eq!(code, 1);
    let (_, _, code) = run(&["--no-such-flag"]);
    assert_eq!(code, 1);
}

#[test]
fn help_and_version_exit_zero() {
    let (stdout, _, code) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("analyze"));
    let (_, _, code) = run(&["--version"]);
    assert_eq!(code, 0);
}
