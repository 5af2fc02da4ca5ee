use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn qcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcl")).args(args).env_remove("SOURCE_DATE_EPOCH").output().unwrap()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qcl-e2e-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON report on stdout")
}

#[test]
fn documented_example_gives_eight_passes() {
    let out = qcl(&["verify", "--target", "thm-a", "--n", "3,5", "--samples", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["schemaVersion"], 1);
    assert_eq!(r["run"]["seed"], 7);
    let entries = r["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 8);
    assert!(entries.iter().all(|e| e["status"] == "PASS" && e["target"] == "THM11"));
    assert_eq!(r["summary"]["pass"], 8);
    assert_eq!(entries[0]["modulus"], "Phi(3)*(1-a*q^3)*(a-q^3)");
    assert_eq!(entries[0]["witnessDigest"].as_str().unwrap().len(), 64);
    let ns: Vec<i64> = entries.iter().map(|e| e["n"].as_i64().unwrap()).collect();
    assert_eq!(ns, [3, 3, 3, 3, 5, 5, 5, 5]);
}

#[test]
fn unknown_target_is_a_usage_error() {
    let out = qcl(&["verify", "--target", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bogus"));
    assert_eq!(qcl(&["verify", "--target", "thm-a", "--n", "4"]).status.code(), Some(2));
    assert_eq!(qcl(&["verify", "--target", "thm-a", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(qcl(&["verify"]).status.code(), Some(2));
    assert_eq!(qcl(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qcl(&["--help"]).status.code(), Some(0));
}

#[test]
fn broken_spec_reports_position() {
    let path = scratch("broken.qhs", "verify\nlhs: sum k=0..n+1: 1\nrhs: sum k=0..0: 0\nmodulus: Phi(n)\n");
    let out = qcl(&["verify", "--spec", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 16"), "{err}");
    let undeclared =
        scratch("undeclared.qhs", "verify\nlhs: sum k=0..M: poch(a*q; q^2; k)\nrhs: sum k=0..0: 0\nmodulus: Phi(n)\n");
    assert_eq!(qcl(&["verify", "--spec", undeclared.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(qcl(&["verify", "--spec", "/nonexistent/x.qhs"]).status.code(), Some(3));
}

#[test]
fn false_conjecture_exits_one() {
    let path = scratch("false.qhs", "verify\nlhs: sum k=0..M: qint(2*k+1)\nrhs: sum k=0..0: 0\nmodulus: Phi(n)\n");
    let out = qcl(&["verify", "--spec", path.to_str().unwrap(), "--n", "5"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["entries"][0]["target"], "false");
    assert!(r["summary"]["fail"].as_u64().unwrap() > 0);
}

#[test]
fn spec_files_run_next_to_targets() {
    let spec = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs/eq13.qhs");
    let out = qcl(&["verify", "--target", "eq13", "--spec", spec.to_str().unwrap(), "--n", "3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let entries = r["entries"].as_array().unwrap();
    let digests = |t: &str| -> Vec<Value> {
        entries.iter().filter(|e| e["target"] == t).map(|e| e["witnessDigest"].clone()).collect()
    };
    assert_eq!(digests("EQ13").len(), 4);
    assert_eq!(digests("EQ13"), digests("eq13"));
}

#[test]
fn markdown_and_out_file() {
    let out = qcl(&["verify", "--target", "eq12,thm-b", "--n", "3", "--samples", "1", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8_lossy(&out.stdout);
    assert!(md.contains("## THM12") && md.contains("## EQ12"));
    let path = std::env::temp_dir().join(format!("qcl-e2e-out-{}.json", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_qcl"))
        .args(["verify", "--target", "eq12", "--n", "3", "--out", path.to_str().unwrap()])
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .env("QCL_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(r["run"]["timestamp"], "2023-11-14T22:13:20Z");
    let _ = fs::remove_file(path);
}

#[test]
fn thread_count_does_not_change_bytes() {
    let run =
        |t: &str| qcl(&["verify", "--target", "all", "--n", "3,5", "--samples", "2", "--seed", "3", "--threads", t]);
    let (a, b) = (run("1"), run("3"));
    assert_eq!(a.status.code(), b.status.code());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn other_subcommands() {
    let out = qcl(&["list-targets"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("thm-a") && text.contains("pad17"));
    let out = qcl(&["padic", "--target", "pad13", "--p", "5", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS") && text.contains("COR13 at n=5: PASS"), "{text}");
    assert!(String::from_utf8_lossy(&qcl(&["padic", "--target", "pad13", "--p", "3"]).stdout).contains("SKIPPED"));
    assert_eq!(qcl(&["padic", "--target", "pad13", "--p", "9"]).status.code(), Some(2));
    assert_eq!(qcl(&["padic", "--target", "pad99", "--p", "5"]).status.code(), Some(2));
    let out = qcl(&["check-proof-steps", "--n", "3,5", "--samples", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["fail"], 0);
}
