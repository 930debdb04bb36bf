//! End-to-end checks of the binary: exit codes, JSON shape, file round trips.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_supersat"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn tmpfile(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("supersat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn bound_improved_example() {
    let out = run(&["bound", "improved", "--n", "7", "--m", "22"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["improved_bound"], 3);
    assert_eq!(v["manifest"]["subcommand"], "bound improved");
    assert!(v["manifest"]["checksums"]["result"].is_string());
}

#[test]
fn verify_completion_example() {
    let out = run(&["verify", "completion", "--q", "3", "--set", "0,1,3,9"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["completions"], serde_json::json!([4, 10, 12]));
    assert_eq!(v["result"]["expected_count"], 3);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn verify_failure_exits_1() {
    // {0, 1, 2} mod 7 is not a difference set
    let out = run(&["verify", "difference-set", "--n", "7", "--set", "0,1,2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["result"]["pass"], false);
}

#[test]
fn usage_error_exits_2() {
    let out = run(&["bound", "improved", "--n", "7"]); // missing --m
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let out = run(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corrupted_graph_file_exits_2_with_line() {
    let path = tmpfile("bad.txt");
    std::fs::write(&path, "3 3 2\n0 0\nnot an edge\n").unwrap();
    let out = run(&["count", "c4", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr was: {err}");
}

#[test]
fn oracle_budget_exits_3() {
    let out = run(&["oracle", "min", "--n", "4", "--m", "10", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json_of(&out)["result"]["status"], "inconclusive");
}

#[test]
fn construct_development_roundtrip() {
    let path = tmpfile("heawood.txt");
    let out = run(&[
        "construct",
        "development",
        "--n",
        "7",
        "--set",
        "1,2,4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["graph"]["m"], 21);
    assert_eq!(v["result"]["graph"]["c4"], 0);
    assert!(v["manifest"]["checksums"][path.to_str().unwrap()].is_string());

    let count = run(&["count", "c4", "--graph", path.to_str().unwrap()]);
    assert_eq!(json_of(&count)["result"]["c4"], 0);
    let hist = run(&["count", "codegrees", "--graph", path.to_str().unwrap()]);
    assert_eq!(json_of(&hist)["result"]["histogram"]["1"], 21);
}

#[test]
fn construct_mors_reports_divergence() {
    let out = run(&["construct", "mors", "--q", "7", "--k", "3"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["measured"]["graph"]["m"], 84);
    assert_eq!(v["result"]["predicted"]["m"], 84);
    assert_eq!(v["result"]["measured_equals_predicted"], false);
}

#[test]
fn oracle_table_csv() {
    let out = bin().args(["oracle", "table", "--n", "2", "--csv"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,oracle,plain,improved,gap,status");
    assert_eq!(lines.len(), 6); // header + m in 0..=4
    assert!(lines[5].starts_with("4,1,"));
}

#[test]
fn search_psi2_exhaustive() {
    let out = run(&["search", "psi2", "--orders", "7", "--k", "3"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["psi2"], "0");
    assert_eq!(v["result"]["set"], serde_json::json!([0, 1, 3]));
}

#[test]
fn repro_filter_runs_subset() {
    let out = run(&["repro", "--filter", "singer"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["result"]["criteria"].as_array().unwrap().len(), 1);
    assert_eq!(v["result"]["criteria"][0]["id"], 1);

    let none = run(&["repro", "--filter", "zzz"]);
    assert_eq!(none.status.code(), Some(2));
}

#[test]
fn exact_fields_are_never_floats() {
    // rationals are emitted as strings; floats only in *_approx fields
    let out = run(&["bound", "regime", "--n", "7", "--m", "28"]);
    let v = json_of(&out);
    let r = &v["result"];
    assert_eq!(r["plain_bound"], "21");
    assert_eq!(r["poly_bound"], "21");
    assert_eq!(r["improved_bound"], 21);
    assert_eq!(r["regime"], "(ii)");
    for (key, val) in r.as_object().unwrap() {
        if val.is_f64() {
            assert!(key.ends_with("_approx"), "float in non-approx field {key}");
        }
    }
}
