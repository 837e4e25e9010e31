use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tempfile::NamedTempFile;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_forestpoly"))
}

fn input(v: &Value) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, "{v}").unwrap();
    f
}

fn run(args: &[&str], file: Option<&NamedTempFile>) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    if let Some(f) = file {
        cmd.arg(f.path());
    }
    cmd.output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn paw() -> Value {
    json!({"n": 4, "edges": [[1, 2], [2, 3], [1, 4], [2, 4]]})
}

fn house() -> Value {
    json!({"n": 5, "edges": [[1, 2], [1, 3], [1, 5], [2, 3], [3, 4], [4, 5]]})
}

#[test]
fn paw_isf_coefficients() {
    let f = input(&paw());
    let out = run(&["graph", "isf"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!(["0", "2", "5", "4", "1"]));
}

#[test]
fn reads_stdin() {
    let mut child = bin()
        .args(["graph", "chromatic", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    write!(child.stdin.take().unwrap(), "{}", paw()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!(["0", "-2", "5", "-4", "1"]));
}

#[test]
fn generated_graph_verifies() {
    let gen = run(&["gen", "graph", "--seed", "7", "--n", "6"], None);
    assert_eq!(gen.status.code(), Some(0));
    let g = stdout_json(&gen);
    let f = input(&g);
    let out = run(&["graph", "verify"], Some(&f));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report = stdout_json(&out);
    assert_eq!(report["violations"], json!([]));
}

#[test]
fn malformed_input_exits_2_with_empty_stdout() {
    let mut f = NamedTempFile::new().unwrap();
    write!(f, "{{bad").unwrap();
    let out = run(&["graph", "isf"], Some(&f));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let loop_edge = input(&json!({"n": 2, "edges": [[1, 1]]}));
    let out = run(&["graph", "isf"], Some(&loop_edge));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn budget_overflow_exits_2() {
    let k8 = {
        let mut edges = Vec::new();
        for i in 1..=8 {
            for j in i + 1..=8 {
                edges.push(json!([i, j]));
            }
        }
        json!({"n": 8, "edges": edges})
    };
    let f = input(&k8);
    let out = run(&["graph", "nbc", "--budget", "10"], Some(&f));
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn output_is_deterministic() {
    let a = run(&["gen", "multigraph", "--seed", "11", "--n", "4"], None);
    let b = run(&["gen", "multigraph", "--seed", "11", "--n", "4"], None);
    assert_eq!(a.stdout, b.stdout);
    let f = input(&stdout_json(&a));
    let x = run(&["multigraph", "verify"], Some(&f));
    let y = run(&["multigraph", "verify"], Some(&f));
    assert_eq!(x.stdout, y.stdout);
    assert!(!x.stdout.is_empty());
}

#[test]
fn doubled_triangle_chi() {
    let g = json!({
        "n": 3,
        "zero_edges": [1, 3],
        "edges": [[1, 2, {"re": "2"}], [1, 2, {"re": "3"}], [1, 3, {"re": "5"}]]
    });
    let f = input(&g);
    let out = run(&["multigraph", "chi"], Some(&f));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["chi"], json!(["-4", "8", "-5", "1"]));
    assert_eq!(v["lattice_size"], json!(13));
    let out = run(&["multigraph", "perfect"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn house_is_qpo() {
    let f = input(&house());
    let out = run(&["forest", "qpo"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["is_qpo"], json!(true));
    assert_eq!(v["candidates_checked"], json!(1));
    let out = run(&["forest", "verify"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tight_permutation_count() {
    let out = run(&["forest", "count", "--k", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["count"], json!(13));
}

#[test]
fn complex_cf_and_peo_ordering() {
    let fan = json!({"n": 4, "d": 2, "facets": [[1, 2, 3], [1, 2, 4], [1, 3, 4]]});
    let f = input(&fan);
    let out = run(&["complex", "cf"], Some(&f));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out), json!(["2", "3", "1"]));

    let relabeled = input(&json!({"n": 4, "edges": [[1, 2], [1, 4], [2, 4], [3, 4]]}));
    let out = run(&["graph", "peo"], Some(&relabeled));
    assert_eq!(out.status.code(), Some(0));
    let out2 = run(&["graph", "peo", "--ordering", "[1,2,4,3]"], Some(&relabeled));
    assert_eq!(out2.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["is_peo"], json!(false));
    assert_eq!(stdout_json(&out2)["is_peo"], json!(true));
    let bad = run(&["graph", "peo", "--ordering", "1,1,2,4"], Some(&relabeled));
    assert_eq!(bad.status.code(), Some(2));
}
