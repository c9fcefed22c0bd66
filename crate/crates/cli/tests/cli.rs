use std::io::Write;
use std::process::{Command, Output};

use albanese_core::report::{to_json, AlbaneseDoc};
use tempfile::NamedTempFile;

fn albanese(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_albanese"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn export(name: &str) -> NamedTempFile {
    let out = albanese(&["catalog", "export", name]);
    assert!(out.status.success());
    write_file(&stdout(&out))
}

fn write_file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn path(f: &NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn check_accepts_a_catalog_export() {
    let f = export("bielliptic-3");
    let out = albanese(&["check", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("hyperelliptic datum"));
}

#[test]
fn check_rejects_non_unimodular_matrix() {
    let f = export("bielliptic-1");
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(f.path()).unwrap()).unwrap();
    doc["generators"][0]["rotations"][1] = serde_json::json!({"matrix": [[2, 0], [0, 1]], "eigenvalue": "-1"});
    let bad = write_file(&doc.to_string());
    let out = albanese(&["check", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("LatticeNotPreserved"));
}

#[test]
fn check_reports_fixed_points_with_exit_two() {
    let f = export("z4-threefold");
    let text = std::fs::read_to_string(f.path())
        .unwrap()
        .replacen("\"1/4\"", "\"1/2\"", 1);
    let bad = write_file(&text);
    let out = albanese(&["check", "--format", "json", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], false);
    assert!(v["fixed_points"]
        .as_array()
        .unwrap()
        .iter()
        .any(|w| w["element"] == "g^2"));
}

#[test]
fn malformed_rationals_exit_one() {
    let f = export("bielliptic-1");
    let text = std::fs::read_to_string(f.path())
        .unwrap()
        .replacen("\"1/2\"", "\"1/\"", 1);
    let bad = write_file(&text);
    assert_eq!(albanese(&["check", path(&bad)]).status.code(), Some(1));
    assert_eq!(albanese(&["check", "/nonexistent/input.json"]).status.code(), Some(1));
}

#[test]
fn albanese_json_for_z4() {
    let f = export("z4-threefold");
    let out = albanese(&["albanese", "--recurse", "--format", "json", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["subgroup_h"], serde_json::json!(["e", "g^2"]));
    assert_eq!(v["fiber_class"]["kind"], "hyperelliptic");
    assert_eq!(v["fiber_class"]["holonomy_order"], 2);
    assert_eq!(v["fiber_class"]["cyclic"], true);
    assert_eq!(v["fiber_report"]["q"], 1);
    // the fiber is itself a valid input document
    let fiber = write_file(&v["fiber"].to_string());
    assert_eq!(albanese(&["check", path(&fiber)]).status.code(), Some(0));
}

#[test]
fn albanese_isogeny_for_bielliptic_2() {
    let f = export("bielliptic-2");
    let v: serde_json::Value = serde_json::from_str(&stdout(&albanese(&["albanese", path(&f)]))).unwrap();
    assert_eq!(v["albanese_isogeny_factors"], serde_json::json!([2, 2]));
}

#[test]
fn invariants_for_z2z2() {
    let f = export("z2z2-threefold");
    let out = albanese(&["invariants", "--format", "json", path(&f)]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rows = &v["hodge_diamond"];
    assert_eq!(rows[0], serde_json::json!([1]));
    assert_eq!(rows[1], serde_json::json!([0, 0]));
    assert_eq!(rows[2], serde_json::json!([0, 3, 0]));
    assert_eq!(rows[3], serde_json::json!([1, 3, 3, 1]));
    assert_eq!(v["canonical_order"], 1);
    assert_eq!(v["euler_char_o"], 0);
}

#[test]
fn oracle_passes_on_z4_at_level_four() {
    let f = export("z4-threefold");
    let out = albanese(&["oracle", "--level", "4", path(&f)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("pass"));
    let bad_level = albanese(&["oracle", "--level", "3", path(&f)]);
    assert_eq!(bad_level.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_level.stderr).contains("BadLevel"));
}

#[test]
fn catalog_commands() {
    let list = stdout(&albanese(&["catalog", "list"]));
    assert_eq!(list.lines().count(), 14);
    let run = albanese(&["catalog", "run", "bielliptic-7"]);
    assert_eq!(run.status.code(), Some(0));
    assert!(stdout(&run).contains("matches"));
    let json = albanese(&["catalog", "run", "bielliptic-7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&json)).unwrap();
    assert_eq!(v["mismatches"], serde_json::json!([]));
    assert_eq!(albanese(&["catalog", "run", "no-such-entry"]).status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let f = export("zmzm-threefold-m3");
    let a = albanese(&["albanese", "--recurse", path(&f)]);
    let b = albanese(&["albanese", "--recurse", path(&f)]);
    assert_eq!(a.stdout, b.stdout);
    // and round-trips through the JSON parser unchanged
    let doc: AlbaneseDoc = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(to_json(&doc), stdout(&a).trim_end());
}
