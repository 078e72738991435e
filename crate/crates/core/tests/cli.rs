use std::process::{Command, Output};

use cyclocode::codegen::CyclicCodeReport;
use cyclocode::Poly;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclocode"))
        .args(args)
        .env_remove("CYCLOCODE_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construct_json_round_trips() {
    let o = run(&["construct", "--p", "3", "--n1", "7", "--n2", "19", "--json"]);
    assert!(o.status.success());
    let report: CyclicCodeReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((report.n, report.k), (133, 61));
    assert!(report.classification_layer.ran);
    let again: CyclicCodeReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn construct_text() {
    let o = run(&["construct", "--p", "2", "--n1", "13", "--n2", "19"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("[247, 109]"));
    assert!(text.contains("Theorem 2(II)"));
}

#[test]
fn invalid_parameters_exit_2() {
    for args in [
        ["construct", "--p", "2", "--n1", "5", "--n2", "7"],
        ["construct", "--p", "2", "--n1", "9", "--n2", "13"],
        ["construct", "--p", "7", "--n1", "7", "--n2", "13"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    }
}

#[test]
fn verification_failure_exits_3() {
    let o = run(&[
        "verify",
        "--p",
        "3",
        "--n1",
        "7",
        "--n2",
        "13",
        "--corrupt-table",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
    let ok = run(&["verify", "--p", "3", "--n1", "7", "--n2", "13"]);
    assert!(ok.status.success());
    assert!(!stdout(&ok).contains("FAIL"));
}

#[test]
fn caps_exit_4() {
    let o = run(&[
        "--caps",
        "max_n=50",
        "construct",
        "--p",
        "2",
        "--n1",
        "7",
        "--n2",
        "13",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = run(&[
        "distance",
        "--p",
        "2",
        "--n1",
        "13",
        "--n2",
        "19",
        "--method",
        "exhaustive",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = Command::new(env!("CARGO_BIN_EXE_cyclocode"))
        .args(["construct", "--p", "2", "--n1", "7", "--n2", "13"])
        .env("CYCLOCODE_CAPS", "max_n=90")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn sequence_weight() {
    let o = run(&["sequence", "--n1", "13", "--n2", "19", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 247);
    assert_eq!(v["weight"], 126);
    let runs: u64 = v["runs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[1].as_u64().unwrap())
        .sum();
    assert_eq!(runs, 247);
    let bits = run(&["sequence", "--n1", "13", "--n2", "19"]);
    let line = stdout(&bits);
    assert_eq!(line.trim().len(), 247);
    assert_eq!(line.chars().filter(|&c| c == '1').count(), 126);
}

#[test]
fn tables_json() {
    let o = run(&["tables", "--n1", "7", "--n2", "13", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["direct"].as_array().unwrap().len(), 6);
    let total: u64 = v["direct"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap())
        .map(|x| x.as_u64().unwrap())
        .sum();
    assert!(total > 0 && total <= 72);
    assert_eq!(v["direct"], v["formula"]);
}

#[test]
fn distance_search_binary_247() {
    let o = run(&[
        "distance",
        "--p",
        "2",
        "--n1",
        "13",
        "--n2",
        "19",
        "--method",
        "search",
        "--seed",
        "1",
        "--iterations",
        "5000",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let w = v["search"]["weight"].as_u64().unwrap();
    assert!(w <= 48, "weight {w}");
    assert!(w >= v["bounds"]["lower"].as_u64().unwrap());
    assert_eq!(v["bounds"]["upper"].as_u64().unwrap(), w);
}

#[test]
fn distance_exhaustive_small() {
    let o = run(&[
        "distance",
        "--p",
        "2",
        "--n1",
        "7",
        "--n2",
        "13",
        "--method",
        "exhaustive",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["exhaustive"]["distance"], 7);
    assert_eq!(v["bounds"]["lower"], 7);
    assert_eq!(v["bounds"]["upper"], 7);
}

#[test]
fn export_formats() {
    let base = ["export", "--p", "2", "--n1", "7", "--n2", "13", "--format"];
    let text = run(&[&base[..], &["text"]].concat());
    let g = Poly::parse_text(2, stdout(&text).trim()).unwrap();
    assert_eq!(g.degree(), Some(72));
    assert!(g.divides(&Poly::x_pow_minus_one(2, 91)).unwrap());
    let m = run(&[&base[..], &["matrix"]].concat());
    let rows: Vec<String> = stdout(&m).lines().map(str::to_string).collect();
    assert_eq!(rows.len(), 19);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 91));
    let j = run(&[&base[..], &["json"]].concat());
    let v: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v["k"], 19);
}
