//! Shared helpers for the CLI integration targets.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

/// One pinned invocation per verb: golden file stem and arguments.
pub const GOLDEN_CASES: [(&str, &[&str]); 10] = [
    ("classify", &["classify", "-d", "prime_reciprocal"]),
    ("generators", &["generators", "-d", "grams", "--base", "2", "--count", "5"]),
    ("decompose", &["decompose", "-d", "prime_reciprocal", "7/6"]),
    ("member", &["member", "-d", "prime_reciprocal", "1/4"]),
    ("divides", &["divides", "-d", "grams", "--base", "2", "1/4", "1/2"]),
    ("factorize", &["factorize", "-d", "prime_reciprocal", "5/6"]),
    ("lengths", &["lengths", "-d", "prime_reciprocal", "1", "--up-to", "12"]),
    ("zlength", &["zlength", "-d", "prime_reciprocal", "1", "--length", "7"]),
    ("atoms", &["atoms", "-d", "power_reciprocal", "--base", "2", "--count", "5"]),
    ("chain", &["chain", "-d", "grams", "--base", "2", "--steps", "4"]),
];

pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn puiseux(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_puiseux"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
        code: out.status.code().expect("exited normally"),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// The transcript of one invocation: command line, stdout, exit code.
pub fn transcript(args: &[&str]) -> String {
    let r = puiseux(args);
    format!("$ puiseux {}\n{}{}[exit {}]\n", args.join(" "), r.stdout, r.stderr, r.code)
}

pub fn with_json<'a>(args: &[&'a str]) -> Vec<&'a str> {
    let mut v = args.to_vec();
    v.push("--json");
    v
}
