use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn meg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meg")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SAMPLE: &str = "5 4\n0 1 2\n1 2\n1 3 4\n2 4\n";

#[test]
fn verify_valid_and_invalid() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    let m = write(&dir, "m.txt", "0 2\n");
    let o = meg(&["graph", "verify", s(&p3), "--meg", s(&m)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "VALID\n");

    let c4 = write(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n0 3\n");
    let m = write(&dir, "m2.txt", "0 1 2\n");
    let o = meg(&["graph", "verify", s(&c4), "--meg", s(&m)]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "INVALID\n0 3\n2 3\n");
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.txt", "3 2\n0 1\n0 1\n");
    let m = write(&dir, "m.txt", "0 2\n");
    let o = meg(&["graph", "verify", s(&bad), "--meg", s(&m)]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(err.contains("duplicate edge"));

    assert_eq!(meg(&["graph", "solve", "--nope"]).status.code(), Some(2));
    assert_eq!(meg(&["graph", "verify", "/nonexistent", "--meg", s(&m)]).status.code(), Some(2));
}

#[test]
fn solve_minimalize_round_trip() {
    let dir = TempDir::new().unwrap();
    let g = meg(&["gen", "graph", "--model", "gnp", "--n", "8", "--p", "0.4", "--seed", "11"]);
    assert!(g.status.success());
    let again = meg(&["gen", "graph", "--n", "8", "--p", "0.4", "--seed", "11"]);
    assert_eq!(g.stdout, again.stdout);
    let graph = write(&dir, "g.txt", &stdout(&g));

    let exact_out = dir.path().join("exact.txt");
    assert!(meg(&["graph", "solve", s(&graph), "--exact", "--out", s(&exact_out)]).status.success());
    let greedy = meg(&["graph", "solve", s(&graph), "--greedy"]);
    let greedy_file = write(&dir, "greedy.txt", &stdout(&greedy));
    for m in [&exact_out, &greedy_file] {
        assert_eq!(meg(&["graph", "verify", s(&graph), "--meg", s(m)]).status.code(), Some(0));
    }
    let min = meg(&["graph", "minimalize", s(&graph), "--meg", s(&greedy_file)]);
    let min_file = write(&dir, "min.txt", &stdout(&min));
    assert_eq!(meg(&["graph", "verify", s(&graph), "--meg", s(&min_file)]).status.code(), Some(0));
}

#[test]
fn monitor_with_cross_check() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    let o = meg(&["graph", "monitor", s(&p3), "--pair", "0,2", "--cross-check"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0 1\n1 2\n");
}

#[test]
fn cover_commands() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "fig.txt", SAMPLE);
    assert_eq!(stdout(&meg(&["cover", "solve", s(&fig), "--exact"])), "0 2\n");
    assert_eq!(stdout(&meg(&["cover", "solve", s(&fig), "--greedy"])), "0 2\n");
    assert_eq!(stdout(&meg(&["cover", "normalize", s(&fig)])), "forced=0 2\nresidual=none\n");

    let gen = meg(&["gen", "cover", "--eta", "5", "--h", "6", "--seed", "3", "--normalized"]);
    let inst = write(&dir, "inst.txt", &stdout(&gen));
    let out = dir.path().join("residual.txt");
    let o = meg(&["cover", "normalize", s(&inst), "--out", s(&out)]);
    assert!(stdout(&o).starts_with("forced=\n"));
    assert!(std::fs::read_to_string(out).unwrap().starts_with("5 6\n"));
}

#[test]
fn reduce_build_and_extract() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "fig.txt", SAMPLE);
    let dot = dir.path().join("g.dot");
    let layout = dir.path().join("layout.txt");
    let o = meg(&["reduce", "build", s(&fig), "-k", "2", "--dot", s(&dot), "--layout", s(&layout)]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not normalized"));
    let edges = stdout(&o);
    assert!(edges.starts_with("36 57\n"));
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph G {") && dot.contains("label=\"S2,1\""));
    let layout = std::fs::read_to_string(layout).unwrap();
    assert_eq!(layout.lines().count(), 36);
    assert!(layout.contains("\n35 z_prime j=3\n") || layout.ends_with("35 z_prime j=3\n"));

    // The built graph feeds `graph solve`, whose output feeds `reduce extract`.
    let graph = write(&dir, "g.txt", &edges);
    let m = meg(&["graph", "solve", s(&graph), "--greedy"]);
    let m = write(&dir, "m.txt", &stdout(&m));
    let ex = meg(&["reduce", "extract", s(&fig), "--meg", s(&m), "-k", "2"]);
    assert!(ex.status.success(), "{}", String::from_utf8_lossy(&ex.stderr));
    let text = stdout(&ex);
    assert!(text.contains("cover l=0: ") && text.contains("cover l=1: "));
}

#[test]
fn pipeline_report() {
    let dir = TempDir::new().unwrap();
    let fig = write(&dir, "fig.txt", SAMPLE);
    let o = meg(&["pipeline", "run", s(&fig), "-k", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l == "n=36"));
    assert!(text.lines().any(|l| l == "m=57"));
    assert!(text.lines().any(|l| l == "best_cover_valid=true"));

    let o = meg(&["pipeline", "run", s(&fig), "-k", "2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 36);
    assert_eq!(v["h_star"], 2);
}
