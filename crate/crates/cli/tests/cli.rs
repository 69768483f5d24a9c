use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gapcert(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gapcert"));
    cmd.args(args).env_remove("GAPCERT_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("GAPCERT_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn certify_exit_codes() {
    let ok = gapcert(&["certify"], None);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stderr)
    );
    let v = json(&ok);
    assert_eq!(v["command"], "certify");
    assert_eq!(v["result"]["certificate"]["certified"], true);
    assert_eq!(
        v["result"]["certificate"]["characters"]
            .as_array()
            .unwrap()
            .len(),
        16
    );

    assert_eq!(
        gapcert(&["certify", "--lambda", "0.24"], None)
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        gapcert(&["certify", "--lambda", "0"], None).status.code(),
        Some(2)
    );

    let short = gapcert(&["certify", "--length-bound", "2"], None);
    assert_eq!(short.status.code(), Some(3));
    let e: Value = serde_json::from_slice(&short.stderr).unwrap();
    assert_eq!(e["error"]["exit_code"], 3);
}

#[test]
fn bad_input_is_exit_three() {
    assert_eq!(
        gapcert(&["stats", "--word", "Q"], None).status.code(),
        Some(3)
    );
    assert_eq!(
        gapcert(&["bounds", "--eta=-0.1"], None).status.code(),
        Some(3)
    );
}

#[test]
fn classes_cache_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let first = gapcert(&["classes", "--format", "json"], Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = gapcert(&["classes", "--format", "json"], Some(dir.path()));
    let fresh = gapcert(&["classes", "--format", "json", "--no-cache"], None);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, fresh.stdout);
}

#[test]
fn no_hyperbolic_rows_below_systole() {
    let out = gapcert(&["classes", "--length-bound", "0.1"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("elliptic,")));
    assert!(!text.lines().any(|l| l.starts_with("hyperbolic,")));
}

#[test]
fn pipeline_degree_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    let out = gapcert(
        &["pipeline", "--n", "1", "--out", path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let r = &v["result"];
    assert_eq!(r["schreier"]["k"], 2);
    let walk = r["walk"].as_array().unwrap();
    assert!(!walk.is_empty() && walk.len() <= 3);
    assert_eq!(walk.last().unwrap()["hamming_to_target"], 0);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["stats", "--n", "60", "--samples", "400", "--seed", "5"];
    let one = gapcert(&[&args[..], &["--threads", "1"]].concat(), None);
    let four = gapcert(&[&args[..], &["--threads", "4"]].concat(), None);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn help_lists_subcommands() {
    let out = gapcert(&["--help"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for cmd in [
        "certify", "classes", "covers", "stats", "bounds", "pipeline",
    ] {
        assert!(text.contains(cmd), "{cmd}");
    }
}
