//! Exit status contract: 0 ok, 2 not_member or unknown, 3 unsupported, 1 error.

mod common;

use common::{puiseux, with_json};
use puiseux_cli::report::{Report, Status};

fn status_of(args: &[&str]) -> (i32, Status) {
    let r = puiseux(&with_json(args));
    let report: Report = serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", r.stdout));
    (r.code, report.status)
}

#[test]
fn matrix() {
    let cases: &[(&[&str], i32, Status)] = &[
        (&["member", "-d", "prime_reciprocal", "5/6"], 0, Status::Ok),
        (&["member", "-d", "prime_reciprocal", "1/4"], 2, Status::NotMember),
        (&["member", "-d", "grams", "--base", "2", "1/9"], 2, Status::NotMember),
        (&["member", "-d", "grams", "--base", "2", "1/2"], 0, Status::Ok),
        (&["divides", "-d", "prime_reciprocal", "1", "1/2"], 2, Status::NotMember),
        (&["decompose", "-d", "prime_reciprocal", "1/4"], 2, Status::NotMember),
        (&["decompose", "-d", "grams", "--base", "2", "1/2"], 3, Status::Unsupported),
        (&["chain", "-d", "prime_reciprocal"], 3, Status::Unsupported),
        (&["factorize", "-d", "geometric", "--ratio", "1/2", "1"], 3, Status::Unsupported),
        (&["member", "-d", "prime_reciprocal", "1/0"], 1, Status::Error),
        (&["member", "-d", "prime_reciprocal", "-1/2"], 1, Status::Error),
        (&["member", "-d", "gap", "1/2"], 1, Status::Error),
        (&["member", "-d", "nope", "1/2"], 1, Status::Error),
        (&["member", "1/2"], 1, Status::Error),
        (&["chain", "-d", "grams", "--base", "2", "--steps", "17"], 1, Status::Error),
    ];
    for (args, code, status) in cases {
        assert_eq!(status_of(args), (*code, *status), "{args:?}");
    }
}

#[test]
fn unknown_is_two() {
    // A tiny node budget leaves the bounded gap search undecided.
    let r = puiseux(&["member", "-d", "gap", "--ell", "2", "97/1155", "--node-budget", "1", "--json"]);
    let report: Report = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!((r.code, report.status), (2, Status::Unknown), "{}", r.stdout);
}

#[test]
fn argument_errors_exit_one() {
    for args in [
        &["member", "-d", "prime_reciprocal", "1/2", "--max-length", "0"][..],
        &["member", "-d", "prime_reciprocal"][..],
        &["frobnicate"][..],
    ] {
        let r = puiseux(args);
        assert_eq!(r.code, 1, "{args:?}");
        assert!(!r.stderr.is_empty());
    }
    assert_eq!(puiseux(&["--help"]).code, 0);
}

#[test]
fn table_errors_go_to_stderr() {
    let r = puiseux(&["member", "-d", "prime_reciprocal", "x"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("malformed rational literal"));
}

#[test]
fn descriptor_file_is_read() {
    let dir = std::env::temp_dir().join(format!("puiseux-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("custom.json");
    std::fs::write(&path, r#"{"family":"custom","numerators":[1,1],"denominators":[2,4]}"#).unwrap();
    let r = puiseux(&["classify", "--file", path.to_str().unwrap(), "--json"]);
    let report: Report = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(report.status, Status::Ok);
    assert!(r.stdout.contains("\"reciprocal\""));
    let bad = puiseux(&["classify", "--file", path.to_str().unwrap(), "--base", "2"]);
    assert_eq!(bad.code, 1);
    std::fs::remove_dir_all(&dir).ok();
}
