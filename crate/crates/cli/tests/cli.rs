use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_structkern"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn k5(dir: &Path) {
    let o = run(dir, &["gen", "gnp", "--n", "5", "--p", "1", "--out", "k5.dimacs"]);
    assert!(o.status.success());
}

#[test]
fn params_of_k5() {
    let dir = tempfile::tempdir().unwrap();
    k5(dir.path());
    let o = run(dir.path(), &["params", "k5.dimacs", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"vc":4,"tc":0,"nd":1,"mw":0}"#);
}

#[test]
fn solve_threshold_above_n() {
    let dir = tempfile::tempdir().unwrap();
    k5(dir.path());
    let o = run(dir.path(), &["solve", "clique", "k5.dimacs", "-k", "99"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "no");
    let o = run(dir.path(), &["solve", "clique", "k5.dimacs", "-k", "5", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], Value::Bool(true));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["solve", "nonsense", "x"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["params", "missing.dimacs"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["verify", "--targets", "nope"]).status.code(), Some(2));
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "--targets", "all", "--seed", "7", "--trials", "25", "--json"];
    let a = run(dir.path(), &args);
    assert_eq!(a.status.code(), Some(0));
    let b = run(dir.path(), &args);
    assert_eq!(stdout(&a), stdout(&b));
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["passed"], Value::Bool(true));
}

#[test]
fn nd_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gen", "cluster", "--cliques", "3,2", "--attach", "1", "--seed", "4", "--out", "g.dimacs"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["compress-nd", "dominating-set", "g.dimacs", "-k", "2", "--out", "g.nd", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["bits"].as_u64().unwrap() <= v["bound"].as_u64().unwrap());
    let o = run(dir.path(), &["decompress-nd", "g.nd", "--out", "back.dimacs", "--json"]);
    assert!(o.status.success());
    let a = run(dir.path(), &["params", "g.dimacs", "--json"]);
    let b = run(dir.path(), &["params", "back.dimacs", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn kernels_reductions_and_compositions() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["gen", "cluster", "--cliques", "3,3,3", "--attach", "2", "--seed", "1", "--out", "c.dimacs"]);
    assert!(o.status.success());
    for kernel in ["vc-tc", "oct-tc", "is-tc"] {
        let o = run(dir.path(), &["kernelize", kernel, "c.dimacs", "-k", "4", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{kernel}");
    }
    for kernel in ["tp-tc", "tp-vc"] {
        let o = run(dir.path(), &["kernelize", kernel, "c.dimacs", "--json"]);
        assert_eq!(o.status.code(), Some(0), "{kernel}");
    }
    let o = run(dir.path(), &["turing-clique", "c.dimacs", "-k", "4", "--json"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["gen", "cnf", "--vars", "3", "--clauses", "3", "--out", "f.cnf"]);
    assert!(o.status.success());
    let o = run(dir.path(), &["reduce", "sat-to-chromatic", "f.cnf", "--out", "chrom.json"]);
    assert!(o.status.success());
    let sat = run(dir.path(), &["solve", "cnf-sat", "f.cnf"]);
    let col = run(dir.path(), &["--guardrails", "n=64", "solve", "chromatic-number", "chrom.json"]);
    assert_eq!(stdout(&sat).lines().next(), stdout(&col).lines().next());
    let o = run(dir.path(), &["compose", "hamiltonian-path", "--sample", "3", "--n", "4", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["semantics"], "AND");
}

#[test]
fn sweep_runs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["verify", "--sweep", "--exhaustive", "5", "--trials", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("73 graphs"));
}
