use std::io::Write;
use std::process::{Command, Stdio};

use serde_json::Value;

use leavitt_rank::cli::{run, Outcome, EXIT_INPUT, EXIT_OK, EXIT_ORACLE, EXIT_SIZE_GUARD};

const TOEPLITZ: &str = r#"{
  "name": "toeplitz",
  "vertices": ["v", "w"],
  "edges": [
    {"id": "e", "src": "v", "dst": "v", "mult": 1},
    {"id": "f", "src": "v", "dst": "w", "mult": 1}
  ]
}"#;

const LINE: &str = r#"{"vertices":["v","w"],"edges":[{"id":"e","src":"v","dst":"w","mult":1}]}"#;

const CHAIN: &str = r#"{"vertices":["a","b","c","d"],"edges":[
  {"id":"x","src":"a","dst":"b","mult":"omega"},
  {"id":"y","src":"b","dst":"c","mult":"omega"},
  {"id":"z","src":"c","dst":"d","mult":"omega"}]}"#;

const BREAKING: &str = r#"{"vertices":["v","w","y"],"edges":[
  {"id":"a","src":"v","dst":"w","mult":"omega"},
  {"id":"b","src":"v","dst":"y","mult":1}]}"#;

fn call(args: &[&str], input: &str) -> Outcome {
    let mut argv = vec!["leavitt-rank"];
    argv.extend_from_slice(args);
    run(argv, &mut input.as_bytes())
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn stable_rank_of_toeplitz() {
    let v = json(&call(&["stable-rank"], TOEPLITZ));
    assert_eq!(v["value"], 2);
    assert_eq!(v["certificate"]["kind"], "exhausted");
    assert_eq!(v["certificate"]["cycle"], "e#0");
    assert_eq!(v["verified"], true);
}

#[test]
fn closure_of_w_on_the_line() {
    let v = json(&call(&["closure", "--set", "w"], LINE));
    assert_eq!(v["closure"], serde_json::json!(["v", "w"]));
    assert_eq!(v["stages"]["w"], 0);
    assert_eq!(v["stages"]["v"], 1);
}

#[test]
fn lattice_size_guard() {
    assert_eq!(json(&call(&["lattice"], CHAIN))["size"], 5);
    assert_eq!(call(&["lattice", "--max-lattice", "4"], CHAIN).code, EXIT_SIZE_GUARD);
    assert_eq!(call(&["report", "--max-lattice", "4"], CHAIN).code, EXIT_SIZE_GUARD);
}

#[test]
fn input_errors() {
    assert_eq!(call(&["restrict", "--set", "v"], TOEPLITZ).code, EXIT_INPUT);
    assert_eq!(call(&["bh", "--set", "v,"], TOEPLITZ).code, EXIT_INPUT);
    assert_eq!(call(&["quotient", "--set", "w", "--breaking", "v"], LINE).code, EXIT_INPUT);
    assert_eq!(call(&["ideal-graph", "--set", ""], TOEPLITZ).code, EXIT_INPUT);
    assert_eq!(call(&["tower", "--depth", "0"], TOEPLITZ).code, EXIT_INPUT);
    assert_eq!(call(&["approx", "--set", "v", "--edges", "e#1"], TOEPLITZ).code, EXIT_INPUT);
    assert_eq!(call(&["report", "--depth", "x"], TOEPLITZ).code, EXIT_INPUT);
    let out = call(&["validate"], "{\"vertices\": [\"v\"],\n \"edges\": 3}");
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn breaking_vertices_and_quotients() {
    let v = json(&call(&["bh", "--set", "w"], BREAKING));
    assert_eq!(v["breaking"], serde_json::json!(["v"]));
    let kept = json(&call(&["quotient", "--set", "w", "--breaking", "v"], BREAKING));
    assert_eq!(kept["graph"]["vertices"], serde_json::json!(["v", "y"]));
    let split = json(&call(&["quotient", "--set", "w"], BREAKING));
    assert_eq!(split["graph"]["vertices"], serde_json::json!(["v", "v'", "y"]));
    assert_eq!(split["vertex_origin"]["v'"]["of"], "v");
    let pairs = json(&call(&["pairs"], BREAKING));
    // five hereditary saturated sets, and only {w} has a breaking vertex
    assert_eq!(pairs["count"], 6);
}

#[test]
fn every_command_runs() {
    let commands: &[&[&str]] = &[
        &["validate"],
        &["vertices"],
        &["closure", "--set", "v"],
        &["lattice"],
        &["bh", "--set", "w"],
        &["pairs"],
        &["restrict", "--set", "w"],
        &["quotient", "--set", "w"],
        &["approx", "--set", "v,w", "--edges", "e#0,f"],
        &["tower", "--depth", "2"],
        &["ideal-graph", "--set", "w"],
        &["h0"],
        &["desing", "--depth", "2"],
        &["cond-l"],
        &["cond-k"],
        &["isolated"],
        &["pis"],
        &["pis-quotients"],
        &["trace"],
        &["stable-rank", "--strict-finite"],
        &["report"],
    ];
    for args in commands {
        for format in ["json", "text"] {
            let mut full = args.to_vec();
            full.extend(["--format", format, "--oracle"]);
            let out = call(&full, TOEPLITZ);
            assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
            assert!(!out.stdout.is_empty());
        }
    }
}

#[test]
fn report_carries_version_and_digest() {
    let v = json(&call(&["report"], TOEPLITZ));
    assert_eq!(v["tool"], "leavitt-rank");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert_eq!(v["report"]["stable_rank"]["value"], 2);
    let first = call(&["report"], TOEPLITZ);
    assert_eq!(first, call(&["report"], TOEPLITZ));
}

#[test]
fn oracle_rejects_too_many_vertices() {
    let names: Vec<String> = (0..21).map(|i| format!("\"v{i}\"")).collect();
    let doc = format!("{{\"vertices\":[{}]}}", names.join(","));
    assert_eq!(call(&["validate", "--oracle"], &doc).code, EXIT_SIZE_GUARD);
    assert_ne!(EXIT_ORACLE, EXIT_SIZE_GUARD);
}

#[test]
fn binary_reads_files_and_stdin() {
    let bin = env!("CARGO_BIN_EXE_leavitt-rank");
    let dir = std::env::temp_dir().join(format!("leavitt-rank-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("toeplitz.json");
    std::fs::write(&path, TOEPLITZ).unwrap();

    let from_file = Command::new(bin).args(["stable-rank"]).arg(&path).output().unwrap();
    assert!(from_file.status.success());

    let mut child = Command::new(bin)
        .args(["stable-rank"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(TOEPLITZ.as_bytes()).unwrap();
    let from_stdin = child.wait_with_output().unwrap();
    assert_eq!(from_file.stdout, from_stdin.stdout);

    let missing = Command::new(bin).args(["validate"]).arg(dir.join("absent.json")).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_INPUT));
    let unknown = Command::new(bin).args(["validate", "--bogus"]).arg(&path).output().unwrap();
    assert_eq!(unknown.status.code(), Some(EXIT_INPUT));
    std::fs::remove_dir_all(&dir).unwrap();
}
