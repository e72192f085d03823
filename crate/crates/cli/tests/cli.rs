use std::collections::BTreeSet;
use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn nprime(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nprime"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn pairs(v: &Value) -> BTreeSet<(u64, u64)> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|a| (a[0].as_u64().unwrap(), a[1].as_u64().unwrap()))
        .collect()
}

#[test]
fn psl28_nprime_json() {
    let o = nprime(&["graph", "nprime", "PSL(2,8)", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["vertices"], serde_json::json!([2, 3, 7]));
    assert_eq!(pairs(&v["arcs"]), BTreeSet::from([(2, 7), (2, 3)]));
}

#[test]
fn emitted_graphs_reparse() {
    let o = nprime(&["graph", "nprime", "Presented(7,3,2)"]);
    let text = stdout(&o);
    let g = nprime_core::graphs::DirectedPrimeGraph::from_json(text.trim()).unwrap();
    assert_eq!(g.to_json(), text.trim());
    let o = nprime(&["graph", "gk", "Presented(7,3,2)", "--mode", "dominance"]);
    let text = stdout(&o);
    let g = nprime_core::graphs::UndirectedPrimeGraph::from_json(text.trim()).unwrap();
    assert_eq!(g.edges(), [(3, 7)]);
}

#[test]
fn dot_output() {
    let o = nprime(&["graph", "nprime", "PSL(2,7)", "--dot"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("2 -> 3;") && text.contains("3 -> 7;"));
    let o = nprime(&["graph", "gk", "Presented", "--mode", "double", "--dot"]);
    assert!(stdout(&o).contains("3 -- 7;"));
}

#[test]
fn trivial_group_gk_is_empty() {
    let o = nprime(&["graph", "gk", "Cyclic(1)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"vertices":[],"edges":[]}"#);
}

#[test]
fn npq_psl2_q7_verified() {
    let o = nprime(&["verify", "npq-psl2", "--q", "7"]);
    assert!(o.status.success());
    let recs = records(&o);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["verdict"], "pass");
    assert_eq!(recs[0]["detail"]["report"], "VERIFIED");
    assert!(String::from_utf8_lossy(&o.stderr).contains("VERIFIED"));
}

#[test]
fn npq_rejects_even_q() {
    let o = nprime(&["verify", "npq-psl2", "--q", "8"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(records(&o)[0]["verdict"], "error");
}

#[test]
fn parse_errors_cite_position_and_token() {
    let o = nprime(&["group", "info", "Sym(4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = records(&o)[0]["error"].as_str().unwrap().to_string();
    assert!(err.contains("position"), "{err}");
}

#[test]
fn bound_violations_name_the_bound() {
    let o = nprime(&["--enumeration-bound", "10", "graph", "nprime", "Sym(4)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(records(&o)[0]["error"]
        .as_str()
        .unwrap()
        .contains("bound 10"));
}

#[test]
fn quotient_subgraph_from_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corpus.json");
    fs::write(&path, r#"["Sym(4)", "Presented(7,3,2)", "Alt(5)"]"#).unwrap();
    let o = nprime(&[
        "verify",
        "quotient-subgraph",
        "--corpus",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let recs = records(&o);
    assert_eq!(
        recs.iter()
            .filter(|r| r["instance"].as_str().unwrap().starts_with("Sym(4)"))
            .count(),
        4
    );
    assert!(recs
        .iter()
        .any(|r| r["instance"] == "Presented(7,3,2) / M3" && r["detail"]["strict"] == true));
    assert!(recs.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn descent_instance_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    fs::write(
        &good,
        r#"{"group": "Frob(7,3,1)", "p_generators": ["(0 1 2 3 4 5 6)"], "b": "(1 2 4)(3 6 5)", "p": 7, "q": 3, "k": 1}"#,
    )
    .unwrap();
    let o = nprime(&["verify", "descent", "--instance", good.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let bad = dir.path().join("bad.json");
    fs::write(
        &bad,
        r#"{"group": "Frob(7,3,1)", "p_generators": ["(0 1 2 3 4 5 6)"], "b": "(0 1 2 3 4 5 6)", "p": 7, "q": 3, "k": 1}"#,
    )
    .unwrap();
    let o = nprime(&["verify", "descent", "--instance", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(records(&o)[0]["verdict"], "fail");
}

#[test]
fn seeded_random_descent_is_deterministic() {
    let a = nprime(&["--seed", "7", "verify", "descent", "--random", "10"]);
    let b = nprime(&["--seed", "7", "verify", "descent", "--random", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(records(&a).len(), 10);
}

#[test]
fn frobenius_count_suite() {
    let o = nprime(&["verify", "frobenius-count", "--stocking", "64"]);
    assert!(o.status.success());
    let recs = records(&o);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["detail"]["count_normalizing"], 6);
    let o = nprime(&[
        "verify",
        "frobenius-count",
        "--spec",
        "Sym(4)",
        "--normal-order",
        "4",
        "--p",
        "3",
        "--q",
        "2",
        "--k",
        "1",
    ]);
    assert!(o.status.success());
    assert_eq!(records(&o)[0]["detail"]["ell"], 2);
}

#[test]
fn corpus_run_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.jsonl");
    let cfg = dir.path().join("cfg.json");
    fs::write(
        &cfg,
        serde_json::json!({
            "entries": ["Sym(4)", "PSL(2,7)", "Frob(7,3,1)"],
            "suites": ["graphs", "quotient-subgraph", "npq-psl2", "ring-properties", "criterion-soundness"],
            "bounds": {"ring_pairs": 10},
            "output": {"path": out, "format": "jsonl"},
        })
        .to_string(),
    )
    .unwrap();
    let o = nprime(&["corpus", "run", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    let recs: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs[0]["instance"], "Sym(4)");
    assert!(recs
        .iter()
        .any(|r| r["check"] == "npq-psl2" && r["detail"]["report"] == "VERIFIED"));
    let again = nprime(&["corpus", "run", cfg.to_str().unwrap()]);
    assert!(again.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), text);
}

#[test]
fn corpus_config_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    fs::write(&cfg, r#"{"entries": [], "suites": ["graphs"]}"#).unwrap();
    let o = nprime(&["corpus", "run", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
