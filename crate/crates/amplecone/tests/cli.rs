//! Binary-level tests: exit codes, report metadata, and byte-identical
//! reruns.

use std::process::Command;

fn data_path(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, String, i32) {
    let output = Command::new(env!("CARGO_BIN_EXE_amplecone"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&output.stdout).into_owned(),
        String::from_utf8_lossy(&output.stderr).into_owned(),
        output.status.code().unwrap_or(-1),
    )
}

#[test]
fn vcd_report_carries_metadata() {
    let (stdout, _, code) = run(&["vcd", &data_path("y2.json")]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["meta"]["name"], "Y2");
    assert_eq!(doc["meta"]["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["meta"]["height"], 20);
    assert_eq!(doc["meta"]["iso_height"], 10);
    assert_eq!(doc["meta"]["word_bound"], 6);
    assert_eq!(doc["report"]["vcd"], 1);
}

#[test]
fn output_is_byte_identical_across_runs() {
    for command in ["analyze", "roots", "walls", "packing", "fibrations", "vcd"] {
        let (a, _, _) = run(&[command, &data_path("y2.json"), "--height", "12"]);
        let (b, _, _) = run(&[command, &data_path("y2.json"), "--height", "12"]);
        assert_eq!(a, b, "{command} output differs across runs");
    }
    let (a, _, _) = run(&["render", &data_path("y2.json"), "--height", "12"]);
    let (b, _, _) = run(&["render", &data_path("y2.json"), "--height", "12"]);
    assert_eq!(a, b, "render output differs across runs");
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ this is not json").unwrap();
    let (_, stderr, code) = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());
}

#[test]
fn missing_file_exits_one() {
    let (_, _, code) = run(&["walls", "/nonexistent/lattice.json"]);
    assert_eq!(code, 1);
}

#[test]
fn vcd_inconclusive_exits_two() {
    // the cantor lattice is a disconnected packing; without the flag the
    // verdict stays open
    let (stdout, _, code) = run(&["vcd", &data_path("cantor.json")]);
    assert_eq!(code, 2);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["report"]["method"], "inconclusive");
    assert_eq!(doc["report"]["vcd"], serde_json::Value::Null);
}

#[test]
fn render_svg_and_out_flag() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("packing.svg");
    let (_, _, code) = run(&[
        "render",
        &data_path("y2.json"),
        "--height",
        "12",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.matches("<circle").count() >= 3);
}

#[test]
fn render_json_matches_walls() {
    let (stdout, _, code) = run(&[
        "render",
        &data_path("y2.json"),
        "--height",
        "12",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let spheres = doc["spheres"].as_array().unwrap();
    let (walls_out, _, _) = run(&["walls", &data_path("y2.json"), "--height", "12"]);
    let walls: serde_json::Value = serde_json::from_str(&walls_out).unwrap();
    assert_eq!(
        spheres.len(),
        walls["chamber"]["walls"].as_array().unwrap().len()
    );
}

#[test]
fn render_rejects_three_dimensional_boundary() {
    // Y3 has a 3-dimensional boundary; svg is refused, json works
    let (_, stderr, code) = run(&["render", &data_path("y3.json"), "--height", "8"]);
    assert_eq!(code, 1);
    assert!(!stderr.is_empty());
    let (stdout, _, code) = run(&[
        "render",
        &data_path("y3.json"),
        "--height",
        "8",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("spheres"));
}

#[test]
fn text_format_mentions_certification_bound() {
    let (stdout, _, code) = run(&[
        "walls",
        &data_path("y2.json"),
        "--height",
        "8",
        "--format",
        "text",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("certified up to height 8"));
}

#[test]
fn dump_debug_includes_models() {
    let (stdout, _, code) = run(&["analyze", &data_path("y2.json"), "--dump-debug"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(doc["debug"]["bridge_residual"].as_f64().unwrap() < 1e-9);
    assert_eq!(doc["debug"]["ample_in_models"]["ball"]["model"], "ball");
    assert!(doc["debug"]["standard_transformation_word"]["word"].is_array());

    let (stdout, _, _) = run(&["vcd", &data_path("y2.json"), "--dump-debug"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert!(doc["report"]["debug"]["mw_rank_ge_1"].is_array());
}
