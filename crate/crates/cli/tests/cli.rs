use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle-bc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn indecomposable_counts() {
    for (n, count) in [("1", 2), ("2", 7), ("3", 15)] {
        let out = run(&["indecomposables", "--n", n]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["count"], count);
        assert_eq!(v["indecomposables"].as_array().unwrap().len(), count);
    }
    let v = json(&run(&["indecomposables", "--n", "1"]));
    let labels: Vec<&str> = v["indecomposables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, ["U(1,1)", "V(1)"]);
}

#[test]
fn verify_jacobi_passes() {
    let out = run(&["verify", "--suite", "jacobi", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let records = v.as_array().unwrap();
    assert!(!records.is_empty());
    for r in records {
        assert_eq!(r["status"], "pass");
        for key in ["check_id", "instance", "expected", "computed"] {
            assert!(r[key].is_string(), "{key}");
        }
    }
}

#[test]
fn verify_all_default_rank() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let ids: std::collections::BTreeSet<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["check_id"].as_str().unwrap())
        .collect();
    for prefix in ["gabriel", "jacobi", "B2", "C3", "BC3", "cartan", "quotient", "euler", "oracle"] {
        assert!(ids.iter().any(|id| id.starts_with(prefix)), "{prefix} missing");
    }
}

#[test]
fn oracle_logs_point_counts() {
    let out = run(&["verify", "--suite", "oracle", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let log = String::from_utf8(out.stderr).unwrap();
    assert!(log.contains("[V(1), V(2)]: U(2,1): chi(X,Y)=1 [F2:1 F3:1]"), "{log}");
}

#[test]
fn oracle_skips_large_rank_unless_forced() {
    let out = run(&["verify", "--suite", "oracle", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["status"], "skipped");
}

#[test]
fn budget_exhaustion_has_its_own_exit_code() {
    let out = run(&["verify", "--suite", "oracle", "--n", "2", "--budget", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert!(v.as_array().unwrap().iter().any(|r| r["status"] == "budget_exceeded"));
    assert!(v.as_array().unwrap().iter().all(|r| r["status"] != "fail"));
}

#[test]
fn invalid_arguments() {
    assert_eq!(run(&["verify", "--n", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "oracle", "--primes", "2,2"]).status.code(), Some(4));
    assert_eq!(run(&["verify", "--suite", "oracle", "--primes", "2,11"]).status.code(), Some(4));
}

#[test]
fn tables_latex_and_values() {
    let out = run(&["tables", "--n", "3", "--format", "latex"]);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    // two tables, 15 rows each
    assert_eq!(s.lines().filter(|l| l.starts_with('$')).count(), 30);
    assert!(s.contains("\\frac{1}{1+t}"));
    assert!(s.contains("% findings: 0"));

    let v = json(&run(&["tables", "--n", "3"]));
    let rows = |k: usize| v["tables"][k]["rows"].as_array().unwrap().clone();
    assert_eq!(rows(0).len(), 225);
    let cell = rows(1)
        .into_iter()
        .find(|r| r["row_type"] == "V(2)" && r["col_type"] == "V(1)")
        .unwrap();
    assert_eq!((cell["value_at_1_num"].as_i64(), cell["value_at_1_den"].as_i64()), (Some(1), Some(2)));
    assert!(v["tables"][0]["findings"].as_array().unwrap().is_empty());
}

#[test]
fn tables_report_undetermined_resolutions() {
    let out = run(&["tables", "--n", "3", "--max-depth", "1"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("undetermined"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "--n", "3"][..],
        &["tables", "--n", "3", "--format", "csv"],
        &["brackets", "--n", "3"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}

#[test]
fn bracket_table_formats() {
    let v = json(&run(&["brackets", "--n", "2"]));
    assert_eq!(v["algebra"]["basis"].as_array().unwrap().len(), 9);
    let csv = String::from_utf8(run(&["brackets", "--n", "2", "--format", "csv"]).stdout).unwrap();
    assert!(csv.contains("\"W(1,1)\",V(2),V(1)"));
    let tex = String::from_utf8(run(&["brackets", "--n", "2", "--format", "latex"]).stdout).unwrap();
    assert!(tex.starts_with("\\begin{tabular}"));
}
