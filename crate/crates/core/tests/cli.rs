use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use layerlat::standardize::RationalPlacement;
use layerlat::{Bunch, CayleyTable, Chain};
use serde_json::Value;

fn layerlat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_layerlat")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = layerlat(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write_fixture(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.bunch"));
    fs::write(&path, stdout(&["fixture", name])).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn spec_examples() {
    let dir = tempfile::tempdir().unwrap();
    let s3 = write_fixture(dir.path(), "s3");
    assert_eq!(stdout(&["eval", &s3, "--op", "neg", "--lhs", "t:e"]).trim(), "t:e");
    let doc: Value = serde_json::from_str(&stdout(&["fill-gap", &s3, "--x", "t:e", "--y", "u:e"])).unwrap();
    assert_eq!(doc["witness"], "u-1:e");
    assert_eq!(doc["case"], "2a");
    let tables = stdout(&["enumerate", "--size", "3"]);
    let t = CayleyTable::parse_csv(&tables).unwrap();
    assert_eq!(t.unit(), t.falsum());
}

#[test]
fn queries() {
    assert_eq!(stdout(&["type", "s3"]).trim(), "Odd");
    assert_eq!(stdout(&["type", "ze"]).trim(), "EvenNonIdemF");
    assert_eq!(stdout(&["bounded", "zb"]), "true\ntop u:e\nbottom u:d:e\n");
    assert_eq!(stdout(&["bounded", "lz"]).trim(), "false");
    assert_eq!(stdout(&["eval", "zb", "--op", "mul", "--lhs", "t:2", "--rhs", "t:-5"]).trim(), "t:-3");
    assert_eq!(stdout(&["eval", "zb", "--op", "cmp", "--lhs", "t:2", "--rhs", "u:e"]).trim(), "<");
    assert_eq!(stdout(&["eval", "ze", "--op", "res", "--lhs", "t:2", "--rhs", "t:1"]).trim(), "t:-1");
    assert!(stdout(&["validate", "lz2"]).contains("ok"));
    assert!(stdout(&["laws", "lz", "--samples", "500"]).contains("0 failures"));
}

#[test]
fn exit_codes() {
    assert_eq!(layerlat(&["eval", "s3", "--op", "pow", "--lhs", "t:e"]).status.code(), Some(2));
    assert_eq!(layerlat(&["frobnicate"]).status.code(), Some(2));
    let out = layerlat(&["fill-gap", "ze", "--x", "t:0", "--y", "t:1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
    assert_eq!(layerlat(&["table", "lz"]).status.code(), Some(1));
    assert_eq!(layerlat(&["eval", "s3", "--op", "mul", "--lhs", "t:e"]).status.code(), Some(1));
    assert_eq!(layerlat(&["type", "/no/such/file"]).status.code(), Some(1));
    assert_eq!(layerlat(&["enumerate", "--size", "12"]).status.code(), Some(1));
}

#[test]
fn bad_bunch_file_reports_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.bunch");
    fs::write(&path, "{\n  \"skeleton\": [\"t\"],\n  \"partition\": {\"t\": \"x\"},\n  \"groups\": {\"t\": \"int\"},\n  \"subgroups\": {},\n  \"steps\": {}\n}\n").unwrap();
    let out = layerlat(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn outputs_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["s3", "zb", "ze", "lz", "lz2"] {
        let text = stdout(&["fixture", name]);
        assert_eq!(Bunch::parse(&text).unwrap(), layerlat::fixtures::by_name(name).unwrap());
    }
    let s3 = write_fixture(dir.path(), "s3");
    let csv = dir.path().join("s3.csv");
    fs::write(&csv, stdout(&["table", &s3])).unwrap();
    let doc: Value = serde_json::from_str(&stdout(&["decompose", csv.to_str().unwrap()])).unwrap();
    assert_eq!(doc["mismatches"], 0);
    let rebuilt = Bunch::from_json(&doc["bunch"]).unwrap();
    assert_eq!(Chain::new(rebuilt).unwrap().cayley_table().unwrap().0, CayleyTable::parse_csv(&fs::read_to_string(&csv).unwrap()).unwrap());

    let doc: Value = serde_json::from_str(&stdout(&["densify", "zb", "--prefix", "5", "--rounds", "2"])).unwrap();
    let ext = Chain::new(Bunch::from_json(&doc["bunch"]).unwrap()).unwrap();
    for e in doc["elements"].as_array().unwrap() {
        ext.parse_element(e.as_str().unwrap()).unwrap();
    }
    for rec in doc["trace"].as_array().unwrap() {
        let w = ext.parse_element(rec["witness"].as_str().unwrap()).unwrap();
        let x = ext.parse_element(rec["x"].as_str().unwrap()).unwrap();
        assert!(ext.lt(&x, &w));
    }

    let zb = Chain::new(layerlat::fixtures::zb()).unwrap();
    let placed = RationalPlacement::parse_csv(&stdout(&["standardize", "zb", "--prefix", "12", "--depth", "5"]), &zb).unwrap();
    assert_eq!(placed.len(), 17);
    assert!(placed.order_violations(&zb).is_empty());

    let json: Value = serde_json::from_str(&stdout(&["table", "zb", "--limit", "5", "--format", "json"])).unwrap();
    assert_eq!(json["elements"].as_array().unwrap().len(), 5);
    assert!(stdout(&["table", "s3", "--format", "dot"]).starts_with("digraph"));
    let window = stdout(&["table", "zb", "--limit", "4"]);
    assert_eq!(window.lines().count(), 5);
}

#[test]
fn enumerate_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("tables");
    stdout(&["enumerate", "--size", "5", "--out-dir", out.to_str().unwrap()]);
    let files: Vec<_> = fs::read_dir(&out).unwrap().collect();
    assert_eq!(files.len(), 1);
    let text = fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    assert_eq!(CayleyTable::parse_csv(&text).unwrap().len(), 5);
}

#[test]
fn embed_check_on_spec_files() {
    let dir = tempfile::tempdir().unwrap();
    let zb = write_fixture(dir.path(), "zb");
    let spec = dir.path().join("id.json");
    fs::write(&spec, r#"{"skeleton_map": {"t": "t", "u": "u"}, "layer_maps": {"t": "id", "u": "unit"}}"#).unwrap();
    let out = layerlat(&["embed-check", &zb, &zb, spec.to_str().unwrap(), "--samples", "300"]);
    assert!(out.status.success(), "{}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr));
    let swapped = dir.path().join("bad.json");
    fs::write(&swapped, r#"{"skeleton_map": {"t": "u", "u": "u"}, "layer_maps": {"t": "unit", "u": "unit"}}"#).unwrap();
    assert_eq!(layerlat(&["embed-check", &zb, &zb, swapped.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn samples_env_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_layerlat"))
        .args(["laws", "lz"])
        .env("LAYERLAT_SAMPLES", "64")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("64 triples"));
}
