use std::io::Write;
use std::process::{Command, Output, Stdio};

fn regraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_regraph")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn reg_depends_on_field() {
    let o = regraph(&["reg", "--field", "3", "catalog:mv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2");
    assert_eq!(stdout(&regraph(&["reg", "catalog:mv"])), "3");
}

#[test]
fn reg_reads_edge_lists_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_regraph"))
        .args(["reg", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["reg"], 2);
    assert_eq!(v["graph"], "Dhc");
}

#[test]
fn verify_cycles_report() {
    let o = regraph(&["verify", "cycles", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for key in ["suite", "count", "failures", "wall_ms", "flags"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["count"], 10);
    assert_eq!(v["failures"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_hibi_uniqueness() {
    let o = regraph(&["verify", "hibi-uniqueness"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS hibi-uniqueness"));
}

#[test]
fn errors_exit_nonzero() {
    assert!(!regraph(&["verify", "no-such-suite"]).status.success());
    assert!(!regraph(&["reg", "catalog:nothing"]).status.success());
    let big = regraph(&["reg", "catalog:c40"]);
    assert!(!big.status.success());
    assert!(String::from_utf8_lossy(&big.stderr).contains("cap"));
}

#[test]
fn inexact_needs_permission() {
    let args = ["decompose", "catalog:mv", "--list", "--budget", "3"];
    assert_eq!(regraph(&args).status.code(), Some(1));
    let mut with = args.to_vec();
    with.push("--allow-inexact");
    assert!(regraph(&with).status.success());
}

#[test]
fn transforms_and_vim() {
    let o = regraph(&["transform", "triple", "catalog:c4", "0", "1"]);
    let g = stdout(&o);
    let o = Command::new(env!("CARGO_BIN_EXE_regraph"))
        .args(["invariants", "--json", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .and_then(|mut c| {
            c.stdin.take().unwrap().write_all(g.as_bytes())?;
            c.wait_with_output()
        })
        .unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["cochord"], 3);
    assert_eq!(v["n"], 7);

    let o = regraph(&["vim", "catalog:c8", "--target", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["vim_lower_bound"], 3);
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_regraph"))
        .env("REGRAPH_THREADS", "1")
        .args(["reg", "catalog:c7"])
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "2");
}
