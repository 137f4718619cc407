use std::process::{Command, Output};

use serde_json::Value;

fn hh1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hh1"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn build_dimensions() {
    let out = hh1(&[
        "build", "--kind", "smash", "--p", "3", "--n", "2", "--r", "1",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["labels"].as_array().unwrap().len(), 27);
    let out = hh1(&["build", "--kind", "trunc", "--p", "3", "--exps", "2"]);
    assert_eq!(stdout_json(&out)["labels"].as_array().unwrap().len(), 9);
    let out = hh1(&["build", "--kind", "quiver", "--p", "5"]);
    assert_eq!(stdout_json(&out)["labels"].as_array().unwrap().len(), 8);
}

#[test]
fn characteristic_two_is_a_usage_error() {
    let out = hh1(&[
        "build", "--kind", "smash", "--p", "2", "--n", "1", "--r", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic Char(k):=p≥3"));
    assert_eq!(hh1(&["build", "--kind", "nope"]).status.code(), Some(2));
    assert_eq!(
        hh1(&["build", "--kind", "trunc", "--p", "9", "--exps", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hh1_reports() {
    let out = hh1(&["hh1", "--kind", "smash", "--p", "3", "--n", "2", "--r", "1"]);
    assert_eq!(stdout_json(&out)["report"]["dim_hh1"], 3);
    let out = hh1(&["hh1", "--kind", "trivext", "--p", "3"]);
    let v = stdout_json(&out);
    assert_eq!(v["report"]["dim_hh1"], 4);
    assert_eq!(
        v["fingerprint"]["derived_series"],
        serde_json::json!([4, 3])
    );
    assert_eq!(v["fingerprint"]["mu"], 2);
    assert_eq!(v["lie"]["labels"].as_array().unwrap().len(), 4);
    let out = hh1(&["hh1", "--kind", "trunc", "--p", "3", "--exps", "1,1"]);
    assert_eq!(stdout_json(&out)["report"]["dim_hh1"], 18);
}

#[test]
fn json_round_trip_and_validation() {
    let dir = tempfile::tempdir().unwrap();
    let built = hh1(&["build", "--kind", "u0borel", "--p", "3"]);
    let path = dir.path().join("a.json");
    std::fs::write(&path, &built.stdout).unwrap();
    let p = path.to_str().unwrap();
    let again = hh1(&["build", "--kind", "json", "--file", p]);
    assert!(again.status.success());
    assert_eq!(again.stdout, built.stdout);

    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"p":3,"labels":["1","x"],"unit":[1,0],"mult":[[0,0,0,1],[1,1,1,1]]}"#,
    )
    .unwrap();
    let out = hh1(&["hh1", "--kind", "json", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    std::fs::write(&bad, "not json").unwrap();
    let out = hh1(&["hh1", "--kind", "json", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "hh1", "--kind", "smash", "--p", "5", "--n", "1", "--r", "1", "--seed", "7",
    ];
    assert_eq!(hh1(&args).stdout, hh1(&args).stdout);
}

fn strip_timing(mut v: Value) -> Value {
    for r in v.as_array_mut().unwrap() {
        r["elapsed_ms"] = Value::from(0);
    }
    v
}

#[test]
fn reproduce_paper_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let md = dir.path().join("r.md");
    let out = hh1(&[
        "reproduce-paper",
        "--p",
        "3",
        "--json",
        json.to_str().unwrap(),
        "--md",
        md.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let results = v.as_array().unwrap();
    assert_eq!(results.len(), hh1_core::suite::CHECK_IDS.len());
    assert!(results.iter().all(|r| r["status"] == "pass"));
    assert!(std::fs::read_to_string(&md)
        .unwrap()
        .contains("| lemma-3.6 | pass |"));

    let again = dir.path().join("s.json");
    hh1(&[
        "reproduce-paper",
        "--p",
        "3",
        "--json",
        again.to_str().unwrap(),
    ]);
    let w: Value = serde_json::from_str(&std::fs::read_to_string(&again).unwrap()).unwrap();
    assert_eq!(strip_timing(v), strip_timing(w));
}

#[test]
fn reproduce_paper_at_five() {
    assert_eq!(hh1(&["reproduce-paper", "--p", "5"]).status.code(), Some(0));
}

#[test]
fn injected_fault_fails_multiplication_check() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let out = hh1(&[
        "reproduce-paper",
        "--inject-fault",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let r = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["check_id"] == "lemma-3.1")
        .unwrap();
    assert_eq!(r["status"], "fail");
    assert!(r["details"]["counterexample"].is_object());
}

#[test]
fn suite_rejects_unsupported_primes() {
    assert_eq!(hh1(&["reproduce-paper", "--p", "7"]).status.code(), Some(2));
    assert_eq!(hh1(&["reproduce-paper", "--p", "2"]).status.code(), Some(2));
}
