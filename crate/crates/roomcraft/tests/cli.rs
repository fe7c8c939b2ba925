use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BEDROOM: &str = r#"{
  "schema": "roomcraft/1",
  "room_type": "bedroom",
  "furniture": [
    {"id": "bed", "category": "bed"},
    {"id": "nightstand", "category": "nightstand"},
    {"id": "wardrobe", "category": "wardrobe"},
    {"id": "lamp", "category": "lamp"}
  ],
  "relations": [
    {"subject": "bed", "relation": "against_wall", "object": "wall:north"},
    {"subject": "nightstand", "relation": "touching", "object": "bed"},
    {"subject": "wardrobe", "relation": "against_wall", "object": "wall:east"},
    {"subject": "lamp", "relation": "on_top_of", "object": "nightstand"}
  ]
}"#;

fn roomcraft(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roomcraft"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("run roomcraft")
}

fn stderr_records(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stderr)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("stderr line is not JSON ({e}): {l}")))
        .collect()
}

fn error_code(out: &Output) -> String {
    stderr_records(out)
        .iter()
        .find(|r| r["level"] == "error")
        .map(|r| r["code"].as_str().unwrap_or_default().to_owned())
        .unwrap_or_default()
}

fn setup() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bedroom.json"), BEDROOM).unwrap();
    dir
}

#[test]
fn generate_writes_layout_svg_and_trace() {
    let dir = setup();
    let out = roomcraft(&["generate", "--spec", "bedroom.json", "--seed", "7", "--out", "o", "--trace"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let layout: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/layout.json")).unwrap()).unwrap();
    assert_eq!(layout["schema"], "roomcraft-layout/1");
    assert_eq!(layout["items"].as_array().unwrap().len(), 4);
    assert_eq!(layout["provenance"]["seed"], 7);
    let svg = std::fs::read_to_string(dir.path().join("o/layout.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("class=\"facing\""));
    let trace: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("o/trace.json")).unwrap()).unwrap();
    assert!(trace["residual"].as_array().unwrap().is_empty());
    assert!(stderr_records(&out).iter().all(|r| r["level"] != "error"));
}

#[test]
fn trace_file_only_with_flag() {
    let dir = setup();
    let out = roomcraft(&["generate", "--spec", "bedroom.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(!dir.path().join("o/trace.json").exists());
}

#[test]
fn generate_is_byte_identical() {
    let dir = setup();
    for o in ["a", "b"] {
        let out = roomcraft(&["generate", "--spec", "bedroom.json", "--seed", "3", "--out", o, "--trace"], dir.path());
        assert_eq!(out.status.code(), Some(0));
    }
    for f in ["layout.json", "layout.svg", "trace.json"] {
        assert_eq!(std::fs::read(dir.path().join("a").join(f)).unwrap(), std::fs::read(dir.path().join("b").join(f)).unwrap(), "{f}");
    }
}

#[test]
fn dangling_reference_exits_2() {
    let dir = setup();
    let spec = BEDROOM.replace(r#""object": "bed""#, r#""object": "ghost""#);
    std::fs::write(dir.path().join("bad.json"), spec).unwrap();
    let out = roomcraft(&["generate", "--spec", "bad.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "DanglingReference");
}

#[test]
fn malformed_spec_exits_2() {
    let dir = setup();
    std::fs::write(dir.path().join("bad.json"), "{\"schema\": ").unwrap();
    let out = roomcraft(&["validate", "--spec", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "MalformedDocument");
}

#[test]
fn over_full_room_exits_3_with_trace() {
    // Six 1.9 × 1.9 m pieces in a 3 × 3 m room: 120% coverage.
    let furniture: Vec<String> = (0..6)
        .map(|i| format!(r#"{{"id": "box{i}", "category": "cabinet", "size": {{"w": 1.9, "d": 1.9, "h": 0.9}}}}"#))
        .collect();
    let spec = format!(
        r#"{{"schema": "roomcraft/1", "room_type": "bedroom", "room": {{"width": 3.0, "depth": 3.0}}, "furniture": [{}], "relations": []}}"#,
        furniture.join(",")
    );
    let dir = setup();
    std::fs::write(dir.path().join("full.json"), spec).unwrap();
    let out = roomcraft(&["generate", "--spec", "full.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let records = stderr_records(&out);
    let err = records.iter().find(|r| r["level"] == "error").unwrap();
    assert_eq!(err["code"], "ItemUnplaceable");
    assert!(err["trace"]["attempts"].as_u64().unwrap() > 1);
}

#[test]
fn usage_errors_exit_1() {
    let dir = setup();
    let out = roomcraft(&["generate"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "Usage");
    let out = roomcraft(&["generate", "--spec", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "Io");
    let out = roomcraft(&["render", "--layout", "missing.json", "--format", "csv"], dir.path());
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bad_config_exits_1() {
    let dir = setup();
    std::fs::write(dir.path().join("c.toml"), "[placement]\ncolour = 1\n").unwrap();
    let out = roomcraft(&["generate", "--spec", "bedroom.json", "--config", "c.toml"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "InvalidConfig");
}

#[test]
fn extract_then_generate() {
    let dir = setup();
    let out = roomcraft(
        &["extract", "--provider", "mock", "--out", "spec.json", "A bedroom with a bed against the north wall and a lamp on a nightstand."],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = roomcraft(&["generate", "--spec", "spec.json", "--out", "o"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn empty_extraction_exits_5() {
    let dir = setup();
    let out = roomcraft(&["extract", "--provider", "mock", "   "], dir.path());
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(error_code(&out), "EmptyInput");
}

#[test]
fn metrics_render_graph_validate_optimize() {
    let dir = setup();
    assert_eq!(roomcraft(&["generate", "--spec", "bedroom.json", "--out", "o"], dir.path()).status.code(), Some(0));

    let out = roomcraft(&["metrics", "o/layout.json", "o/layout.json", "--spec", "bedroom.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "layout,oob,ori,coherence");
    assert_eq!(lines.len(), 4);
    assert!(lines[3].starts_with("all,0.0000,"));

    let out = roomcraft(&["render", "--layout", "o/layout.json"], dir.path());
    assert_eq!(out.stdout, std::fs::read(dir.path().join("o/layout.svg")).unwrap());

    let out = roomcraft(&["graph", "--spec", "bedroom.json", "--dot"], dir.path());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph scene {"));
    assert!(dot.contains("\"lamp\" -> \"nightstand\""));

    let out = roomcraft(&["validate", "--spec", "bedroom.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["valid"], true);

    let out = roomcraft(&["optimize", "--layout", "o/layout.json", "--spec", "bedroom.json", "--out", "fixed.json", "--trace", "t.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("fixed.json").exists() && dir.path().join("t.json").exists());
}

#[test]
fn bench_and_sweep_csv() {
    let dir = setup();
    let out = roomcraft(&["bench", "--scenes", "2", "--densities", "0.15,0.25"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().count(), 1 + 3 * 2 + 3);
    let out = roomcraft(&["sweep", "--scenes", "2", "--ratios", "0.5,1,2", "--format", "json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 3);
    assert_eq!(rows[1]["alpha"], 0.5);
}
