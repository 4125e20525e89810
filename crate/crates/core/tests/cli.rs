use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples").join(format!("{name}.json"))
}

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quasichar")).env("QUASICHAR_CACHE_DIR", cache).args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn without_timing(o: &Output) -> Value {
    let mut v = json(o);
    v.as_object_mut().unwrap().remove("timing");
    v
}

#[test]
fn coboundary_document_lists_the_four_constituents() {
    let dir = tempfile::tempdir().unwrap();
    let f = fixture("zsqrtm5");
    let out = run(dir.path(), &["coboundary", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let polys: Vec<&str> =
        doc["constituents"].as_array().unwrap().iter().map(|c| c["constituent"]["polynomial"].as_str().unwrap()).collect();
    assert_eq!(polys, ["t^2 - t + t*x", "t^2 - 2*t + 2*t*x", "t^2 - 3*t + 3*t*x", "t^2 - 4*t + 4*t*x"]);
    assert_eq!(doc["period"]["norm"], 6);
    assert_eq!(doc["constituents"][3]["constituent"]["coefficients"], serde_json::json!([[2, 0, 1], [1, 0, -4], [1, 1, 4]]));
    assert_eq!(doc["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let braid = fixture("braid");
    let b = braid.to_str().unwrap();
    assert_eq!(run(dir.path(), &["verify", b, "--qmax", "12"]).status.code(), Some(0));
    assert_eq!(run(dir.path(), &["charpoly", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["eval", b, "--ideal", "0"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["eval", b, "--ideal", "[[1,2]]"]).status.code(), Some(2));
    assert_eq!(run(dir.path(), &["--no-cache", "--max-points", "10", "codes", b, "--ideal", "5", "weight"]).status.code(), Some(3));
    // brute force is skipped, not fatal, when it exceeds the bound
    assert_eq!(run(dir.path(), &["--no-cache", "--max-points", "10", "eval", b, "--ideal", "5"]).status.code(), Some(0));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ring":{"type":"quadratic","d":8},"vectors":[[1]]}"#).unwrap();
    assert_eq!(run(dir.path(), &["charpoly", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(run(dir.path(), &["charpoly", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cache_hits_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let input = dir.path().join("a.json");
    std::fs::copy(fixture("braid"), &input).unwrap();
    let i = input.to_str().unwrap();
    let first = run(&cache, &["coboundary", i]);
    let second = run(&cache, &["coboundary", i]);
    assert_eq!(first.stdout, second.stdout);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache: hit"));
    assert!(!String::from_utf8_lossy(&first.stderr).contains("cache: hit"));

    let fresh = run(&cache, &["--no-cache", "coboundary", i]);
    assert!(!String::from_utf8_lossy(&fresh.stderr).contains("cache: hit"));
    assert_eq!(without_timing(&fresh), without_timing(&first));

    std::fs::copy(fixture("e1e2"), &input).unwrap();
    let changed = run(&cache, &["coboundary", i]);
    assert!(!String::from_utf8_lossy(&changed.stderr).contains("cache: hit"));
    assert_ne!(without_timing(&changed), without_timing(&first));
}

#[test]
fn unwritable_cache_degrades() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let out = run(&blocker.join("sub"), &["charpoly", fixture("e1e2").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    assert_eq!(json(&out)["constituents"][0]["constituent"]["polynomial"], "t^2 - 2*t + 1");
}

#[test]
fn commands_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let z = fixture("zsqrtm5");
    let g = fixture("greene");
    let cases: Vec<Vec<&str>> = vec![
        vec!["charpoly", z.to_str().unwrap()],
        vec!["layers", z.to_str().unwrap()],
        vec!["tutte", g.to_str().unwrap()],
        vec!["codes", g.to_str().unwrap(), "--ideal", "4", "weight"],
        vec!["codes", z.to_str().unwrap(), "--ideal", "[[1,1]]", "dual"],
        vec!["codes", g.to_str().unwrap(), "--ideal", "6", "macwilliams"],
        vec!["eval", z.to_str().unwrap(), "--ideal", "[[2,0],[1,1]]"],
        vec!["section4"],
    ];
    for args in cases {
        let mut full = vec!["--no-cache"];
        full.extend(&args);
        let a = run(dir.path(), &full);
        let b = run(dir.path(), &full);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(without_timing(&a), without_timing(&b), "{args:?}");
    }
}

#[test]
fn layers_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("z.dot");
    let out = run(dir.path(), &["layers", fixture("zsqrtm5").to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 5);
    let sizes: Vec<usize> = doc["torsion_subposets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["members"].as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, [2, 3, 4, 5]);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn eval_and_dual_example() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--no-cache", "eval", fixture("zsqrtm5").to_str().unwrap(), "--ideal", "[[3,0],[1,1]]"]);
    let doc = json(&out);
    assert_eq!(doc["coboundary"], "9*x");
    assert_eq!(doc["characteristic"], 0);
    assert_eq!(doc["brute_force"]["agrees"], true);

    let out = run(dir.path(), &["--no-cache", "section4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 11);
    assert_eq!(doc["rows"][0]["dual_enumerator"], "x^2 + x*y");
    assert_eq!(doc["rows"][1]["dual_words"], serde_json::json!([[0, 0]]));
}

#[test]
fn fixtures_round_trip() {
    for name in ["empty", "single", "e1e2", "braid", "greene", "dual", "zsqrtm5"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let a = quasichar::io::parse_arrangement(&text).unwrap();
        let again = quasichar::io::serialize_arrangement(&a, Some(name.into())).unwrap();
        assert_eq!(quasichar::io::parse_arrangement(&again).unwrap(), a, "{name}");
    }
}
