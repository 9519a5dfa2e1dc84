//! End-to-end tests of the `scox` binary.

use std::process::{Command, Output};

fn scox(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scox")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn e8_switchback_row_three_eight() {
    let o = scox(&["switchback", "--type", "E8", "--a", "3", "--b", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("c = 2,7,2,3"));
}

#[test]
fn sts_has_six_reduced_expressions() {
    let o = scox(&["rex", "enumerate", "--type", "A2", "--left", "", "--right", "", "--word", "sts"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 6);
    let o = scox(&["--format", "json", "rex", "enumerate", "--type", "A2", "--word", "s1s2s1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn infinite_matrix_is_classified_infinite() {
    let dir = std::env::temp_dir().join(format!("scox-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let json = dir.join("m.json");
    std::fs::write(&json, r#"{"matrix": [[1, "inf"], ["inf", 1]], "labels": ["s", "t"]}"#).unwrap();
    let o = scox(&["classify", "--matrix", json.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "infinite-type");
    let toml = dir.join("m.toml");
    std::fs::write(&toml, "matrix = [[1, 3], [3, 1]]\nlabels = [\"s\", \"t\"]\n").unwrap();
    let o = scox(&["classify", "--matrix", toml.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "A2");
}

#[test]
fn usage_errors_exit_one_with_usage_on_stderr() {
    let o = scox(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
    let o = scox(&["switchback", "--type", "E8", "--a", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = scox(&["coset", "--type", "A2", "--word", "q"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_bounds_exit_two() {
    let o = Command::new(env!("CARGO_BIN_EXE_scox"))
        .args(["rex", "enumerate", "--type", "A3", "--word", "s1s2s1s3s2s1"])
        .env("SCOX_MAX_VERTICES", "3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_prints_a_trace_ending_in_a_reduced_expression() {
    let o = scox(&["reduce", "--type", "A2", "--expr", "[s] -s +s +t -t"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("start: "));
    assert!(out.lines().last().unwrap().starts_with("final: "));
    let o = scox(&["--format", "json", "reduce", "--type", "A2", "--expr", r#"{"start":["s1"],"steps":[["-","s1"],["+","s1"]]}"#]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["final"]["steps"].as_array().unwrap().len(), 0);
}

#[test]
fn table_and_coset_outputs_are_deterministic() {
    let a = scox(&["--format", "json", "table", "--type", "F4"]);
    let b = scox(&["--format", "json", "table", "--type", "F4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let o = scox(&["coset", "--type", "A2", "--left", "s", "--right", "t", "--word", "st"]);
    let out = stdout(&o);
    assert!(out.contains("min = e\n"));
    assert!(out.contains("max = s1.s2\n"));
}

#[test]
fn complex_exports_dot_and_json() {
    let o = scox(&["complex", "--type", "A2", "--left", "", "--format", "dot"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("digraph"));
    let o = scox(&["--format", "json", "complex", "--type", "A2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["vertices"].as_array().unwrap().len(), 13);
}

#[test]
fn matsumoto_verify_on_b3() {
    let o = scox(&["matsumoto", "--type", "B3", "--verify"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(" 0 disconnected"));
}

#[test]
fn webs_subcommands() {
    let o = scox(&["webs", "hom-count", "--bottom", "1,1,1", "--top", "1,1,1"]);
    assert_eq!(stdout(&o).trim(), "6");
    let web = "(1,1,1) ; merge@1(1,1) ; merge@1(2,1)";
    let o = scox(&["webs", "relate", "--web", web]);
    assert!(stdout(&o).lines().any(|l| l == "assoc@1"));
    let o = scox(&["webs", "relate", "--web", web, "--relation", "assoc", "--layer", "1"]);
    assert_eq!(stdout(&o).trim(), "(1,1,1) ; merge@2(1,1) ; merge@1(1,2)");
    let o = scox(&["webs", "evaluate", "--web", web]);
    assert!(stdout(&o).contains("degree = 3"));
    let o = scox(&["webs", "normalize", "--web", "(1,1) ; merge@1(1,1) ; split@1(1,1) ; merge@1(1,1)"]);
    assert!(o.status.success());
}
