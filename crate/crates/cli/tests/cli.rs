use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn coordlogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coordlogic"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = coordlogic(&full);
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

#[test]
fn judge_1a_1b_equivalent_both_ways() {
    let v = json(&["judge", "1a", "1b"]);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["judgment"]["category"], "acceptable");
    }
    let pair = &v["pairs"][0];
    assert_eq!(pair["boolean"]["status"], "valid");
    assert_eq!(pair["options"]["equivalent"], true);
}

#[test]
fn judge_2a_2b_diverge() {
    let v = json(&["judge", "2a", "2b"]);
    assert_eq!(v["rows"][0]["judgment"]["category"], "acceptable");
    assert_eq!(v["rows"][1]["judgment"]["category"], "weird_double_image");
    assert_eq!(v["pairs"][0]["boolean"]["status"], "valid");
    assert_eq!(v["pairs"][0]["options"]["equivalent"], false);
}

#[test]
fn judge_5a_5b_not_option_equivalent() {
    let v = json(&["judge", "5a", "5b"]);
    assert_eq!(v["rows"][0]["judgment"]["category"], "acceptable");
    assert_eq!(v["rows"][1]["judgment"]["category"], "acceptable");
    assert_eq!(v["pairs"][0]["boolean"]["status"], "valid");
    assert_eq!(v["pairs"][0]["options"]["equivalent"], false);
}

#[test]
fn judge_lists_every_pair() {
    let v = json(&["judge", "1a", "2a", "5a", "6a"]);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
}

#[test]
fn equiv_accepts_formula_text() {
    let v = json(&["equiv", "A and (B or C)", "A and B or A and C"]);
    assert_eq!(v["boolean"]["status"], "valid");
    assert_eq!(v["options"]["equivalent"], true);
}

#[test]
fn laws_xor_reports_counterexample() {
    let v = json(&["laws", "--connectives", "xor"]);
    let dis2 = v
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["law"] == "Dis.2")
        .unwrap();
    assert_eq!(dis2["verdict"]["status"], "invalid");
    assert_eq!(
        dis2["verdict"]["counterexample"]["assignment"],
        serde_json::json!({"A": true, "B": true, "C": false})
    );
    let text = stdout(&coordlogic(&["laws", "--connectives", "xor"]));
    assert!(text.contains("Dis.2: A xor B and C = (A xor B) and (A xor C)"));
}

#[test]
fn denote_prints_option_set() {
    let text = stdout(&coordlogic(&["denote", "2b"]));
    assert!(
        text.contains("options: {{A:1,B:1},{A:1,C:1},{A:2},{B:1,C:1}}"),
        "{text}"
    );
    assert!(text.contains("category: weird_double_image"));
}

#[test]
fn implicatures_soames_without_opinion_has_no_strong() {
    let v = json(&["implicatures", "2b", "--mode", "soames"]);
    let strong = v["accepted"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["provenance"] == "scalar_strong")
        .count();
    assert_eq!(strong, 0);
    let v = json(&[
        "implicatures",
        "2b",
        "--mode",
        "soames",
        "--opinionated",
        "1",
    ]);
    let strong = v["accepted"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["provenance"] == "scalar_strong")
        .count();
    assert_eq!(strong, 1);
}

#[test]
fn prob_frege_holds() {
    let v = json(&["prob", "frege", "--denominator", "4"]);
    assert_eq!(v["status"], "no_counterexample");
    let v = json(&["prob", "frege-without-uncertainty", "--denominator", "4"]);
    assert_eq!(v["status"], "counterexample");
    assert!(v["witness"].is_object());
}

#[test]
fn parse_error_exits_2_with_position() {
    let out = coordlogic(&["denote", "A and (B or"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("byte 11"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(coordlogic(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        coordlogic(&["prob", "frege", "--denominator", "99"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        coordlogic(&["--format", "yaml", "laws"]).status.code(),
        Some(2)
    );
}

#[test]
fn reproduce_exit_status_tracks_mismatches() {
    let out = coordlogic(&["reproduce"]);
    let text = stdout(&out);
    let mismatches = text.lines().filter(|l| l.starts_with("MISMATCH")).count();
    assert_eq!(out.status.code(), Some(if mismatches == 0 { 0 } else { 1 }));
    assert!(text.ends_with(&format!("mismatched: {mismatches}\n")));
}

#[test]
fn reproduce_covers_every_criterion() {
    let v = json(&["reproduce"]);
    let criteria: BTreeSet<u64> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["criterion"].as_u64().unwrap())
        .collect();
    assert_eq!(criteria, (1..=10).collect());
}

#[test]
fn text_and_json_carry_same_records() {
    let v = json(&["reproduce"]);
    let text = stdout(&coordlogic(&["reproduce"]));
    let records = v["records"].as_array().unwrap();
    let lines: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("MATCH") || l.starts_with("MISMATCH"))
        .collect();
    assert_eq!(records.len(), lines.len());
    for (r, line) in records.iter().zip(lines) {
        assert!(line.contains(r["claim"].as_str().unwrap()));
        assert!(line.contains(&format!("computed={}", r["computed"].as_str().unwrap())));
    }
}

#[test]
fn out_file_matches_json_stdout() {
    let path = std::env::temp_dir().join(format!("coordlogic-out-{}.json", std::process::id()));
    let out = coordlogic(&[
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
        "judge",
        "6a",
        "6c",
    ]);
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(written, out.stdout);
    assert!(!written.contains(&b'\r'));
}
