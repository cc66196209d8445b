use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dyckgrid"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sobs_of_sphere_closure() {
    let o = run(&["surfaces", "sobs", "--set", "empty,sphere"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "torus, projective-plane");
}

#[test]
fn unclosed_set_is_rejected() {
    let o = run(&["surfaces", "sobs", "--set", "torus"]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
}

#[test]
fn prevalent_and_containment() {
    let o = run(&[
        "surfaces",
        "prevalent",
        "--set",
        "empty,sphere,projective-plane",
    ]);
    assert_eq!(stdout(&o).trim(), "sphere");
    assert_eq!(
        stdout(&run(&["surfaces", "contains", "projective-plane", "torus"])).trim(),
        "false"
    );
    assert_eq!(
        stdout(&run(&["surfaces", "contains", "torus", "(0,3)"])).trim(),
        "true"
    );
    assert_eq!(
        stdout(&run(&["surfaces", "normalize", "(1,2)"])).trim(),
        "(1,2)"
    );
    assert_eq!(
        stdout(&run(&["surfaces", "normalize", "(0,4)"])).trim(),
        "(1,2)"
    );
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["generate"])), 64);
    assert_eq!(code(&run(&["generate", "dyck", "--order", "x"])), 64);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn generation_is_deterministic() {
    let args = [
        "generate",
        "dyck",
        "--handles",
        "1",
        "--crosscaps",
        "2",
        "--order",
        "2",
    ];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, run(&args).stdout);
    let g: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(g["cycles"], 2);
    assert_eq!(g["transactions"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_generator_parameters_exit_1() {
    let o = run(&["generate", "wall", "--order", "2"]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "invalid_parameter");
}

#[test]
fn dimacs_round_trip_through_treewidth() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    let td = dir.path().join("g.td");
    let o = run(&[
        "generate",
        "cylindrical",
        "--order",
        "3",
        "--length",
        "4",
        "--format",
        "dimacs",
        "-o",
        path(&gr),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "params",
        "tw",
        "--graph",
        path(&gr),
        "--format",
        "td",
        "-o",
        path(&td),
    ]);
    assert_eq!(code(&o), 0);
    let o = run(&["check", "td", "--graph", path(&gr), "--td", path(&td)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);
}

#[test]
fn json_graph_input() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("k4.json");
    std::fs::write(
        &g,
        r#"{"n":4,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
    )
    .unwrap();
    let o = run(&["params", "hadwiger", "--graph", path(&g)]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 4);
}

#[test]
fn corrupted_model_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&[
        "transform",
        "swap",
        "--kinds",
        "xh",
        "--order",
        "9",
        "--position",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let routed: Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut model = routed["model"].clone();
    let good = dir.path().join("good.json");
    std::fs::write(&good, model.to_string()).unwrap();
    assert_eq!(code(&run(&["check", "model", "--file", path(&good)])), 0);

    let sets = model["branch_sets"].as_object_mut().unwrap();
    let stolen = sets["0"][0].clone();
    sets.get_mut("1")
        .unwrap()
        .as_array_mut()
        .unwrap()
        .push(stolen);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, model.to_string()).unwrap();
    let o = run(&["check", "model", "--file", path(&bad)]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "invalid_model");
    assert_eq!(err["violations"][0]["violation"], "disjointness");
}

#[test]
fn wrong_host_order_is_a_domain_error() {
    let o = run(&[
        "transform",
        "swap",
        "--kinds",
        "xh",
        "--order",
        "8",
        "--position",
        "2",
    ]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "invalid_parameter");
}

#[test]
fn exhausted_budget_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("g.gr");
    run(&[
        "generate",
        "cylindrical",
        "--order",
        "3",
        "--length",
        "6",
        "--format",
        "dimacs",
        "-o",
        path(&gr),
    ]);
    let o = run(&[
        "--budget-nodes",
        "10",
        "params",
        "hadwiger",
        "--graph",
        path(&gr),
    ]);
    assert_eq!(code(&o), 2);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "budget_exceeded");
}

#[test]
fn well_linkedness_failure_carries_a_separator() {
    let dir = tempfile::tempdir().unwrap();
    let gr = dir.path().join("p.gr");
    std::fs::write(&gr, "p edge 5 4\ne 1 2\ne 2 3\ne 3 4\ne 4 5\n").unwrap();
    let o = run(&[
        "check",
        "well-linked",
        "--graph",
        path(&gr),
        "--set",
        "0,1,3,4",
        "--q",
        "1",
    ]);
    assert_eq!(code(&o), 1);
    let err: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "not_well_linked");
    assert!(err["certificate"]["separator"].is_array());
    let o = run(&[
        "check",
        "strongly-linked",
        "--graph",
        path(&gr),
        "--set",
        "0-1",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn plan_reports_the_order_budget() {
    let o = run(&[
        "transform",
        "plan",
        "--handles",
        "0",
        "--crosscaps",
        "3",
        "--order",
        "1",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["g"], 3);
    assert_eq!(v["required_order"], 18075490334784u64);
}

#[test]
fn lattice_is_dot() {
    let o = run(&["surfaces", "lattice", "--genus", "2"]);
    let text = stdout(&o);
    assert!(text.starts_with("digraph"));
    assert!(text.contains("\"torus\""));
    assert!(text.contains("\"klein-bottle\""));
}
