//! The binary's exit codes and output streams.

use std::process::Command;

fn relcoh(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_relcoh")).args(args).env_remove("RELCOH_CACHE_DIR").output().unwrap()
}

#[test]
fn success_prints_json() {
    let out = relcoh(&["sector", "--g", "sl2", "--p", "9", "--n", "0,0,1,1,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["dim_H"], 0);
}

#[test]
fn malformed_multidegree_exits_one() {
    let out = relcoh(&["sector", "--g", "sl2", "--p", "2", "--n", "0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn unknown_algebra_and_flags_exit_one() {
    assert_eq!(relcoh(&["sector", "--g", "sp5", "--p", "1", "--n", "0,0,1,0,0"]).status.code(), Some(1));
    assert_eq!(relcoh(&["sector", "--bogus"]).status.code(), Some(1));
    assert_eq!(relcoh(&["--help"]).status.code(), Some(0));
}

#[test]
fn cache_dir_flag_fills_cache() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table", "--g", "sl2", "--level", "6", "--cache-dir", dir.path().to_str().unwrap()];
    let first = relcoh(&args);
    let second = relcoh(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let lines = std::fs::read_to_string(dir.path().join("sectors.jsonl")).unwrap();
    assert!(lines.lines().count() > 0);
}
