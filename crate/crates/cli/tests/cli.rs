use std::process::{Command, Output};

use serde_json::Value;

fn qindex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qindex"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_without_runtime(o: &Output) -> Value {
    let mut v: Value = serde_json::from_str(&stdout(o)).unwrap();
    v.as_object_mut().unwrap().remove("runtime_ms");
    v
}

#[test]
fn construct_splus_edge_list() {
    let o = qindex(&[
        "construct",
        "splus",
        "--m",
        "7",
        "--k",
        "1",
        "--format",
        "edgelist",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines.iter().filter(|l| l.starts_with("0 ")).count(), 5);
}

#[test]
fn construct_out_file_and_q() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.g6");
    let p = path.to_str().unwrap();
    let o = qindex(&[
        "construct",
        "splus",
        "--m",
        "7",
        "--k",
        "1",
        "--format",
        "graph6",
        "--out",
        p,
    ]);
    assert!(o.status.success());
    let o = qindex(&["q", p, "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let q = v["q"].as_f64().unwrap();
    assert!((q - (7.0 + 33f64.sqrt()) / 2.0).abs() < 1e-9);
    assert_eq!(v["argmax"], 0);
}

#[test]
fn witness_c4_on_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c4.txt");
    std::fs::write(&path, "# square\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let o = qindex(&["witness", "c4", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "c4 0 1 2 3");
    let o = qindex(&["witness", "star", path.to_str().unwrap(), "--s", "3"]);
    assert_eq!(stdout(&o).trim(), "none");
}

#[test]
fn verify_zhai_exit_codes() {
    let o = qindex(&["verify", "zhai", "--m", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "pass");
    let witnesses = v["witnesses"].as_array().unwrap();
    assert!(witnesses
        .iter()
        .any(|w| w["label"] == "maximizer" && w["text"] == "K_{1,4}"));
    assert!(witnesses
        .iter()
        .any(|w| w["label"] == "q" && (w["value"].as_f64().unwrap() - 5.0).abs() < 1e-9));
    qindex::Certificate::from_json(&stdout(&o)).unwrap();

    assert_eq!(
        qindex(&["verify", "zhai", "--m", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_lemma_bounds_grid() {
    let o = qindex(&[
        "verify",
        "lemma-bounds",
        "--k-range",
        "0:5",
        "--m-range",
        "auto:2000",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = qindex(&[
        "verify",
        "lemma-bounds",
        "--k-range",
        "0:0",
        "--m-range",
        "10:40",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = qindex(&[
        "verify",
        "lemma-bounds",
        "--k-range",
        "1",
        "--m-range",
        "38:40",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("m,k,lower,q,upper,perron_q,ok"));
}

#[test]
fn negative_controls_fail_or_refuse() {
    let o = qindex(&[
        "verify",
        "lemma-bounds",
        "--k-range",
        "0:1",
        "--m-range",
        "auto:100",
        "--negative-control",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = qindex(&[
        "verify",
        "quotient",
        "--m",
        "7",
        "--k",
        "1",
        "--negative-control",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_is_stable_across_runs_and_jobs() {
    let args = ["verify", "feng", "--trials", "200", "--seed", "5"];
    let a = qindex(&args);
    let b = qindex(&args);
    let mut with_jobs = vec!["--jobs", "1"];
    with_jobs.extend_from_slice(&args);
    let c = qindex(&with_jobs);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(json_without_runtime(&a), json_without_runtime(&b));
    assert_eq!(json_without_runtime(&a), json_without_runtime(&c));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qindex(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(qindex(&["verify", "claims"]).status.code(), Some(2));
    assert_eq!(
        qindex(&["construct", "splus", "--m", "5", "--k", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qindex(&["q", "/nonexistent/graph.txt"]).status.code(),
        Some(2)
    );
    assert_eq!(qindex(&[]).status.code(), Some(2));
}

#[test]
fn show_defaults_is_json() {
    let o = qindex(&["--show-defaults"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["perron"]["tol"], 1e-12);
    assert_eq!(v["search"]["move_cap"], 100_000);
}

#[test]
fn enumerate_and_search() {
    let o = qindex(&["enumerate", "--m", "4", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 12);
    let o = qindex(&[
        "enumerate",
        "--m",
        "4",
        "--connected",
        "--c4-free",
        "--format",
        "csv",
    ]);
    assert_eq!(stdout(&o).lines().count(), 5);
    let o = qindex(&["search", "--m", "10", "--k", "1", "--restarts", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trace"].as_array().unwrap().len(), 3);
}
