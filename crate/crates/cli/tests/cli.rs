use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dicolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dicolor")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn generate(dir: &Path, name: &str, args: &[&str]) -> String {
    let p = dir.join(name);
    let path = p.to_str().unwrap();
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path]);
    let out = dicolor(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path.to_string()
}

#[test]
fn colorer_result_round_trips_through_verify() {
    let dir = TempDir::new().unwrap();
    let inst = generate(dir.path(), "hp.json", &["ham-dipath", "--n", "14", "--density", "0.3", "--seed", "5"]);
    let out = dicolor(&["color", &inst, "--method", "hamdipath", "--k", "3,2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let kind = v["result"].as_str().unwrap();
    assert!(kind == "coloring" || kind == "certificate");
    let r = write(dir.path(), "r.json", &String::from_utf8(out.stdout).unwrap());
    let out = dicolor(&["verify", &inst, r.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["valid"], true);
}

#[test]
fn improper_coloring_exits_with_one() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.json", r#"{"graph":{"n":2,"edges":[[0,1]]}}"#);
    let c = write(dir.path(), "c.json", r#"{"palette":1,"colors":[1,1]}"#);
    let out = dicolor(&["verify", g.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
}

#[test]
fn invalid_input_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"graph":{"n":2,"edges":[[0,5]]}}"#);
    assert_eq!(dicolor(&["chi", bad.to_str().unwrap()]).status.code(), Some(2));
    let empty = write(dir.path(), "empty.json", "{}");
    assert_eq!(dicolor(&["color", empty.to_str().unwrap(), "--method", "four"]).status.code(), Some(2));
    assert_eq!(dicolor(&["chi", "/nonexistent/instance.json"]).status.code(), Some(2));
    assert_eq!(dicolor(&["gen", "tournament", "--format", "csv"]).status.code(), Some(2));
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = dicolor(&["gen", "tournament", "--n", "9", "--seed", "11"]);
    let b = dicolor(&["gen", "tournament", "--n", "9", "--seed", "11"]);
    let c = dicolor(&["gen", "tournament", "--n", "9", "--seed", "12"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn star_tree_pipeline() {
    let dir = TempDir::new().unwrap();
    let inst = generate(dir.path(), "st.json", &["star-tree", "--shape", "star1", "--n", "10", "--seed", "2"]);
    let out = dicolor(&["color", &inst, "--method", "four"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "coloring");
    assert!(v["coloring"]["palette"].as_u64().unwrap() <= 4);

    let out = dicolor(&["color", &inst, "--method", "star1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().next(), Some("vertex,color"));

    let out = dicolor(&["chi", &inst]);
    assert!(json(&out)["chi"].as_u64().unwrap() <= 4);

    let out = dicolor(&["saturate", &inst]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["graph"], json(&dicolor(&["gen", "star-tree", "--shape", "star1", "--n", "10", "--seed", "2"]))["graph"]);
}

#[test]
fn flatten_reports_star_index() {
    let dir = TempDir::new().unwrap();
    let inst = generate(dir.path(), "r.json", &["star-tree", "--shape", "random", "--n", "9", "--seed", "4"]);
    let out = dicolor(&["flatten", &inst]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["index"].is_u64());
}

#[test]
fn detect_on_tournament_and_pruned_instance() {
    let dir = TempDir::new().unwrap();
    let t = generate(dir.path(), "t.json", &["tournament", "--n", "12", "--seed", "3"]);
    let out = dicolor(&["detect", &t, "--pattern", "multi-block:1,2,1,2"]);
    assert_eq!(json(&out)["verdict"], "found");
    let out = dicolor(&["detect", &t, "--pattern", "two-blocks:1,2"]);
    assert_eq!(json(&out)["verdict"], "found");

    let sf = generate(
        dir.path(),
        "sf.json",
        &["subdivision-free", "--n", "10", "--density", "0.3", "--pattern", "bispindle:2,1,1", "--seed", "3"],
    );
    let out = dicolor(&["detect", &sf, "--pattern", "bispindle:2,1,1"]);
    assert_eq!(json(&out)["verdict"], "absent");
    assert_eq!(dicolor(&["detect", &t, "--pattern", "cycle:3"]).status.code(), Some(2));
}

#[test]
fn bare_certificate_needs_pattern() {
    let dir = TempDir::new().unwrap();
    let t = generate(dir.path(), "t.json", &["tournament", "--n", "8", "--seed", "1"]);
    let out = dicolor(&["detect", &t, "--pattern", "two-blocks:2,1"]);
    let cert = write(dir.path(), "cert.json", &json(&out)["certificate"].to_string());
    let cert = cert.to_str().unwrap();
    assert_eq!(dicolor(&["verify", &t, cert]).status.code(), Some(2));
    let out = dicolor(&["verify", &t, cert, "--pattern", "two-blocks:2,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(dicolor(&["verify", &t, cert, "--pattern", "two-blocks:3,3"]).status.code(), Some(1));
}

#[test]
fn scans_write_csv_and_json() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("report.csv");
    let out = dicolor(&[
        "scan", "bounds", "--theorem", "4k", "--trials", "12", "--n-min", "6", "--n-max", "12", "--format", "csv",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 13);

    let out = dicolor(&["scan", "conjecture", "--trials", "10", "--seed", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["colored"], 10);
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}
