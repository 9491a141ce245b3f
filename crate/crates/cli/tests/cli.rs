//! End-to-end runs of the `qcap` binary.

use std::process::{Command, Output};

use qcap::identities::{registry, Status, VerificationReport};
use serde_json::Value;

fn qcap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcap"))
        .args(args)
        .env_remove("QCAP_DEFAULT_T")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn verify_reports_round_trip_through_json() {
    let o = qcap(&["verify", "--id", "thm1.4-eq1", "--N", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].status, Status::Pass);
    assert_eq!(reports[0].params["N"], 2);
    let again = serde_json::to_string(&reports).unwrap();
    let back: Vec<VerificationReport> = serde_json::from_str(&again).unwrap();
    assert_eq!(back, reports);
}

#[test]
fn verify_without_a_value_sweeps_the_range() {
    let o = qcap(&["verify", "--id", "thm1.4-eq2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 13);
}

#[test]
fn usage_errors_exit_with_two() {
    let cases: &[&[&str]] = &[
        &["verify", "--id", "no-such-identity"],
        &["verify", "--id", "thm1.4-eq1", "--N", "99"],
        &["verify", "--id", "thm1.4-eq1", "--T", "10"],
        &["verify", "--id", "thm1.4-eq1", "--nu", "1"],
        &["verify", "--id", "thm6.1", "--T", "100000"],
        &["enumerate", "--family", "Q7", "--n", "3"],
        &["enumerate", "--family", "C1", "--n", "100000"],
        &["suite"],
        &["suite", "--glob", "nothing-matches-*"],
        &["motions", "--partition", "5,x"],
        &["motions", "--partition", "9,6", "--variant", "sigma"],
        &["frobnicate"],
    ];
    for args in cases {
        let o = qcap(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stderr.is_empty(), "{args:?} gave no message");
    }
}

#[test]
fn enumeration_dump() {
    let o = qcap(&["enumerate", "--family", "dualC2", "--n", "21", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "dualC2");
    assert_eq!(v["n"], 21);
    assert_eq!(v["count"], 5);
    let parts: Vec<Vec<u32>> = serde_json::from_value(v["partitions"].clone()).unwrap();
    assert!(parts.contains(&vec![12, 9]));
    assert!(parts.contains(&vec![3; 7]));

    let o = qcap(&["enumerate", "--family", "D1", "--n", "6"]);
    let text = stdout(&o);
    assert!(text.contains("6\n") && text.contains("4,2\n"));
    assert!(text.trim_end().ends_with("2 partitions"));
}

#[test]
fn motion_trace_ends_at_the_minimal_configuration() {
    let o = qcap(&["motions", "--partition", "27,24,20,15,12,9,4", "--to-minimal", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (summary, trace) = lines.split_last().unwrap();
    assert_eq!(summary["moves"], trace.len());
    assert_eq!(trace[0]["step"], 1);
    assert_eq!(trace[0]["before"], serde_json::json!([27, 24, 20, 15, 12, 9, 4]));
    assert_eq!(trace.last().unwrap()["after"], serde_json::json!([22, 18, 14, 10, 8, 4, 2]));
    assert!(trace.iter().all(|m| m["kind"].is_string()));
    let v = summary;
    assert_eq!(v["round_trip"], true);
}

#[test]
fn ascending_partitions_are_sorted_with_a_warning() {
    let o = qcap(&["motions", "--partition", "4,9,12,15,20,24,27"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert!(stdout(&o).contains("minimal 22,18,14,10,8,4,2"));
}

#[test]
fn registry_listing() {
    let a = stdout(&qcap(&["registry"]));
    let b = stdout(&qcap(&["registry"]));
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), registry().len());
    assert!(a.lines().any(|l| l.starts_with("thm7.3 ")));
    let v: Value = serde_json::from_str(&stdout(&qcap(&["registry", "--format", "json"]))).unwrap();
    assert_eq!(v.as_array().unwrap().len(), registry().len());
}

#[test]
fn environment_sets_the_global_truncation() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_qcap"));
        c.args(["verify", "--id", "cap1-series", "--format", "json"]).env_remove("QCAP_DEFAULT_T");
        if let Some(t) = env {
            c.env("QCAP_DEFAULT_T", t);
        }
        let o = c.output().unwrap();
        let r: Vec<VerificationReport> = serde_json::from_slice(&o.stdout).unwrap();
        r[0].params["T"]
    };
    assert_eq!(run(None), 200);
    assert_eq!(run(Some("40")), 40);
}

#[test]
fn suite_over_a_glob_passes_in_text_mode() {
    let o = qcap(&["suite", "--glob", "table-*", "--jobs", "2"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.starts_with("id "));
    assert!(text.trim_end().ends_with("3 reports: 3 passed, 0 failed, 0 skipped"));
}

#[test]
fn misprint_readings_show_in_verbose_mode() {
    let o = qcap(&["verify", "--id", "typo-single-sum-exponent", "--N", "4", "-v"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("printed reading"));
    assert!(text.contains("holds"));
}

#[test]
fn full_suite_passes() {
    let o = qcap(&["suite", "--all", "-q"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let line = stdout(&o);
    assert!(line.contains(" 0 failed, 0 skipped"), "{line}");
}
