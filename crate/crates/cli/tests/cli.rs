use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn lingoe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lingoe")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn export(dir: &Path, name: &str) -> PathBuf {
    let out = lingoe(&["example", name, "--export"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, &out.stdout).unwrap();
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

const XOR: &str = r#"{
  "group": "Z",
  "field": {"kind": "prime", "p": 2},
  "subshift": "full",
  "automaton": {"alphabet_dim": 1, "memory": [[0], [1]], "coeffs": [[["1"]], [["1"]]]}
}"#;

#[test]
fn example_prop81_has_no_diffs() {
    let out = lingoe(&["example", "prop81"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["diffs"], Value::Array(vec![]));
    assert_eq!(v["run"]["preinj"]["verdict"], "refuted");
    assert_eq!(v["run"]["surj"]["verdict"], "verified_up_to");
}

#[test]
fn every_example_runs_clean() {
    let list = json(&lingoe(&["example", "--list"]));
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["prop71", "prop81", "horizontal-z2", "constants-z"]);
    for name in names {
        let out = lingoe(&["example", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
    }
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(lingoe(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(lingoe(&["mdim", "x.json", "--no-such-flag"]).status.code(), Some(1));
    assert_eq!(lingoe(&["example", "prop99"]).status.code(), Some(1));
    assert_eq!(lingoe(&["example", "prop71", "--field", "4"]).status.code(), Some(1));
    assert_eq!(lingoe(&["--help"]).status.code(), Some(0));
}

#[test]
fn invalid_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = lingoe(&["analyze", dir.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(2));

    let shape = XOR.replace(r#"[["1"]], [["1"]]"#, r#"[["1"]], [["1", "0"]]"#);
    let out = lingoe(&["analyze", write(dir.path(), "shape.json", &shape).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("automaton.coeffs[1]"), "{}", stderr(&out));

    let typo = XOR.replace("alphabet_dim", "alphabet_dimension");
    let out = lingoe(&["analyze", write(dir.path(), "typo.json", &typo).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("automaton"), "{}", stderr(&out));

    let out = lingoe(&["analyze", write(dir.path(), "scalar.json", &XOR.replace(r#"[["1"]], [["1"]]"#, r#"[["1"]], [["x"]]"#)).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn analyze_xor_agrees_with_its_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let out = lingoe(&["analyze", write(dir.path(), "xor.json", XOR).to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["verdicts"]["oracle"]["det"], "1 + t");
    assert_eq!(v["verdicts"]["preinj"]["verdict"], "verified_up_to");
    assert_eq!(v["verdicts"]["surj"]["verdict"], "verified_up_to");
    assert_eq!(v["violations"], Value::Array(vec![]));
}

#[test]
fn mdim_of_horizontal_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(dir.path(), "horizontal-z2");
    let v = json(&lingoe(&["mdim", path.to_str().unwrap()]));
    assert_eq!(v["ratios"], serde_json::json!(["1", "1/2", "1/3", "1/4", "1/5", "1/6"]));
    assert_eq!(v["exact"], true);
}

#[test]
fn tile_on_z() {
    let out = lingoe(&["tile", "--E", "[[0],[1]]", "--region", "box:6"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["tiles"], serde_json::json!([[0], [2], [4]]));
    assert_eq!(v["disjoint"], true);
    assert_eq!(v["interior_covered"], true);
    assert_eq!(v["density_ok"], true);

    let v = json(&lingoe(&["tile", "--group", "Z^2", "--E", "[[0,0],[1,0],[0,1],[1,1]]", "--region", "box:8"]));
    assert_eq!(v["tiles_inside"], 16);
    assert_eq!(v["uncovered_interior"], Value::Array(vec![]));
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(dir.path(), "prop71");
    let p = path.to_str().unwrap();
    let a = lingoe(&["analyze", p, "--delta", "1"]);
    let b = lingoe(&["analyze", p, "--delta", "1"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let g1 = lingoe(&["goe-scan", "--seeds", "12", "--seed", "7"]);
    let g2 = lingoe(&["goe-scan", "--seeds", "12", "--seed", "7"]);
    assert_eq!(g1.stdout, g2.stdout);
    assert_eq!(String::from_utf8(g1.stdout).unwrap().lines().count(), 12);
}

#[test]
fn json_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = lingoe(&["example", "constants-z", "--json-out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&target).unwrap(), out.stdout);
}

#[test]
fn exported_examples_reproduce_their_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["prop71", "prop81", "horizontal-z2", "constants-z"] {
        let path = export(dir.path(), name);
        let analyzed = json(&lingoe(&["analyze", path.to_str().unwrap()]));
        let run = json(&lingoe(&["example", name]));
        assert_eq!(analyzed["verdicts"]["preinj"], run["run"]["preinj"], "{name}");
        assert_eq!(analyzed["verdicts"]["surj"], run["run"]["surj"], "{name}");
        assert_eq!(analyzed["violations"], Value::Array(vec![]), "{name}");

        let again = lingoe(&["example", name, "--export"]);
        assert_eq!(std::fs::read(&path).unwrap(), again.stdout, "{name}");
    }
}

#[test]
fn field_override_applies() {
    let dir = tempfile::tempdir().unwrap();
    let path = export(dir.path(), "constants-z");
    let v = json(&lingoe(&["analyze", path.to_str().unwrap(), "--field", "GF(3)"]));
    assert_eq!(v["instance"]["field"], "GF(3)");
    assert_eq!(v["verdicts"]["surj"]["verdict"], "refuted");
}
