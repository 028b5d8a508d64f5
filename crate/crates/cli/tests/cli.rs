use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn tropbasis(args: &[&str]) -> Run {
    tropbasis_env(args, &[])
}

fn tropbasis_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tropbasis"));
    cmd.current_dir(root()).args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8"),
        stderr: String::from_utf8(out.stderr).expect("utf-8"),
    }
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let r = tropbasis(&all);
    (r.code, serde_json::from_str(&r.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", r.stdout)))
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tropbasis-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("report.schema.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&v).expect("schema compiles")
}

#[test]
fn rank_of_a6_in_json() {
    let (code, v) = json(&["rank", "data/A6.mat"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["tropical_rank"], 4);
    assert_eq!(v["status"], "ok");
}

#[test]
fn rank_of_c7_in_text() {
    let r = tropbasis(&["rank", "data/C7.mat"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("tropical_rank: 3"), "{}", r.stdout);
}

#[test]
fn seven_by_seven_rank_four_is_not_a_basis() {
    let r = tropbasis(&["classify-basis", "7", "7", "4"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("NOT a tropical basis"), "{}", r.stdout);
    let r = tropbasis(&["classify-basis", "6", "9", "4"]);
    assert!(!r.stdout.contains("NOT"), "{}", r.stdout);
}

#[test]
fn bad_token_is_located() {
    let p = tmp("bad.mat", "2 2\n0 1\n2 x\n");
    let r = tropbasis(&["rank", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 3, column 3"), "{}", r.stderr);
    assert!(r.stdout.is_empty());
}

#[test]
fn inf_is_rejected_where_finite_is_required() {
    let p = tmp("inf.mat", "2 2\n0 inf\n2 1\n");
    let r = tropbasis(&["rank", p.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("finite"), "{}", r.stderr);
    let (code, v) = json(&["permanent", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["permanent"], "1");
}

#[test]
fn fractions_round_trip_through_reports() {
    let p = tmp("frac.mat", "2 2\n3/2 0\n-1/3 inf\n");
    let (code, v) = json(&["permanent", p.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["inputs"]["matrix"][0][0], "3/2");
    assert_eq!(v["inputs"]["matrix"][1][1], "inf");
    assert_eq!(v["result"]["permanent"], "-1/3");
}

#[test]
fn budget_exhaustion_has_its_own_exit_code() {
    let r = tropbasis(&["rank", "data/C7.mat", "--budget", "3"]);
    assert_eq!(r.code, 3);
    assert!(r.stderr.contains("budget exceeded"), "{}", r.stderr);
    let (code, v) = json(&["rank", "data/C7.mat", "--budget", "3"]);
    assert_eq!(code, 3);
    assert!(v["status"]["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(tropbasis(&["bogus"]).code, 2);
    assert_eq!(tropbasis(&["witness", "3", "x", "2"]).code, 2);
    assert_eq!(tropbasis(&["rank", "no/such/file.mat"]).code, 2);
    assert_eq!(tropbasis(&["witness", "3", "3", "4"]).code, 2);
}

#[test]
fn case_iv_lift_verifies_from_its_own_serialization() {
    let (code, v) = json(&["lift", "case-iv", "data/case_iv.mat"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rank_over_K"], 3);
    let lines: Vec<&str> = v["certificates"]["lift"].as_array().unwrap().iter().map(|l| l.as_str().unwrap()).collect();
    let f = tmp("iv.lift", &(lines.join("\n") + "\n"));
    let (code, w) = json(&["lift", "verify", "data/case_iv.mat", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(w["result"]["degrees_match"], true);
    assert_eq!(w["result"]["rank_over_K"], 3);
}

#[test]
fn lift_with_wrong_degree_is_reported_at_the_entry() {
    let a = tmp("a.mat", "2 2\n0 1\n1 0\n");
    let f = tmp("f.lift", "1; t^{1}\nt^{2}; 1+t^{1}\n");
    let r = tropbasis(&["lift", "verify", a.to_str().unwrap(), f.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.contains("(1, 0)"), "{}", r.stderr);
    assert!(r.stderr.contains("expected 1, found 2"), "{}", r.stderr);
}

#[test]
fn case_iii_and_classify() {
    let (code, v) = json(&["lift", "case-iii", "data/case_iii.mat"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rank_over_K"], 3);
    let (code, v) = json(&["lift", "classify", "data/case_iv.mat"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["case"], "iv");
    let (code, _) = json(&["lift", "case-iv", "data/case_iii.mat"]);
    assert_eq!(code, 2);
}

#[test]
fn witness_report_flags_the_kapranov_claim() {
    let (code, v) = json(&["witness", "7", "7", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["claimed_trop_rank"], 4);
    assert_eq!(v["result"]["trop_rank_verified"], true);
    assert_eq!(v["result"]["kapranov_lower_verified"], false);
    let (_, v) = json(&["witness", "6", "9", "4"]);
    assert_eq!(v["result"]["tropical_basis"], true);
}

const EVERY_COMMAND: &[&[&str]] = &[
    &["rank", "data/A6.mat"],
    &["permanent", "data/C7.mat"],
    &["singular", "data/A6.mat"],
    &["pattern", "data/A6.mat"],
    &["pattern", "data/case_iii.mat"],
    &["dependence", "data/C7.mat"],
    &["dependence", "data/case_iv.mat"],
    &["lift", "case-iv", "data/case_iv.mat"],
    &["lift", "case-iii", "data/case_iii.mat"],
    &["lift", "classify", "data/case_iv.mat"],
    &["lift", "case-iv", "data/A6.mat"],
    &["witness", "10", "10", "9"],
    &["witness", "4", "4", "2"],
    &["classify-basis", "7", "7", "4"],
    &["rank", "data/C7.mat", "--budget", "3"],
];

#[test]
fn reports_validate_against_the_schema() {
    let schema = schema();
    for args in EVERY_COMMAND {
        let (_, v) = json(args);
        if let Err(errors) = schema.validate(&v) {
            let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
            panic!("{args:?}: {msgs:?}");
        };
    }
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    for args in EVERY_COMMAND {
        let mut all = args.to_vec();
        all.extend(["--format", "json"]);
        let a = tropbasis(&all);
        let b = tropbasis_env(&all, &[("TROPBASIS_THREADS", "1")]);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.code, b.code, "{args:?}");
    }
}

#[test]
fn library_entry_point_matches_the_binary() {
    let out = tropbasis_cli::run(["tropbasis", "classify-basis", "7", "7", "4", "--format", "json"]);
    let bin = tropbasis(&["classify-basis", "7", "7", "4", "--format", "json"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, bin.stdout);
}
