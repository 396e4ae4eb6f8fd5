use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const MAXIMAL: &str = "ring n=2\nx1\nx2\n";
const MIXED: &str = "ring n=2\nx1^2*x2\nx1*x2^2\n";
const POWERS: &str = "ring n=2\nx1^2\nx2^3\n";
const LINE: &str = "ring n=2\nx1^2\nx1*x2\n";
const KOHN: &str = "# b = 2\nring n=2 vars=x,y\nx^3 + x*y^2\ny\n";

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fintype")).args(args).output().unwrap()
}

fn json(command: &str, file: &Path, extra: &[&str]) -> Value {
    let mut args = vec![command, file.to_str().unwrap(), "--json"];
    args.extend_from_slice(extra);
    let out = run(&args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn one(command: &str, text: &str, extra: &[&str]) -> Value {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "input.ideal", text);
    json(command, &file, extra)
}

#[test]
fn type_command() {
    let doc = one("type", POWERS, &[]);
    assert_eq!(doc["schema_version"], 1);
    let r = &doc["result"];
    assert_eq!(r["kind"], "type");
    assert_eq!(r["value"], "3");
    assert_eq!(r["boundary_type"], "6");
    assert_eq!(r["witnesses"][0]["weight"], serde_json::json!([3, 2]));

    assert_eq!(one("type", MAXIMAL, &[])["result"]["value"], "1");
}

#[test]
fn type_rejects_non_m_primary() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.ideal", MIXED);
    let out = run(&["type", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("ttype"));
}

#[test]
fn ttype_command() {
    let r = &one("ttype", MIXED, &[])["result"];
    assert_eq!(r["value"], "3/2");
    assert_eq!(r["dim_zero_locus"], 1);
    let w = &r["witnesses"][0];
    assert_eq!(w["weight"], serde_json::json!([1, 1]));
    assert_eq!((w["r"].as_str(), w["m"].as_str()), (Some("3"), Some("2")));

    let r = &one("ttype", LINE, &[])["result"];
    assert_eq!(r["value"], "2");
    assert_eq!(r["witnesses"][0]["weight"], serde_json::json!([1, 1]));
    assert_eq!(r["dim_zero_locus"], 1);

    assert_eq!(one("ttype", MAXIMAL, &[])["result"]["value"], "1");
}

#[test]
fn nss_command() {
    let r = &one("nss", MIXED, &[])["result"];
    assert_eq!(r["exponent"], 3);
    assert_eq!(r["inclusion"], true);
    assert_eq!(r["certificates"][0]["monomial"], "x1^3*x2^3");
    // x1^2*x2^2 is already a multiple of x1^2*x2.
    assert_eq!(r["sigma_min"], 2);
    assert_eq!(r["briancon_skoda"], true);
    assert_eq!(r["geometric_bound"], "9");
    assert_eq!(r["geometric_ok"], true);

    let r = &one("nss", MAXIMAL, &[])["result"];
    assert_eq!((r["exponent"].as_u64(), r["sigma_min"].as_u64()), (Some(2), Some(1)));

    let r = &one("nss", LINE, &[])["result"];
    assert_eq!((r["exponent"].as_u64(), r["sigma_min"].as_u64()), (Some(4), Some(2)));
}

#[test]
fn probe_command() {
    let r = &one("probe", KOHN, &["--weight-bound", "6"])["result"];
    assert_eq!(r["lower_bound"], "3");
    assert_eq!(r["boundary_lower_bound"], "6");
    assert_eq!(r["status"], "lower-bound");
    assert_eq!(r["inconclusive"], serde_json::json!([]));

    let r = &one("probe", POWERS, &["--weight-bound", "6"])["result"];
    assert_eq!((r["lower_bound"].as_str(), r["status"].as_str()), (Some("3"), Some("exact")));

    assert_eq!(one("probe", MAXIMAL, &[])["result"]["lower_bound"], "1");
}

#[test]
fn curves_command() {
    let curves = |text| one("curves", text, &["--seed", "7"])["result"]["curves"].clone();
    for (text, weights, orders) in [(MIXED, [1, 1], [3, 2]), (POWERS, [3, 2], [6, 2]), (MAXIMAL, [1, 1], [1, 1])] {
        let c = curves(text);
        assert_eq!(c.as_array().unwrap().len(), 1, "{text}");
        assert_eq!(c[0]["weights"], serde_json::json!(weights));
        assert_eq!(c[0]["ideal_order"], orders[0]);
        assert_eq!(c[0]["denominator_order"], orders[1]);
    }
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.ideal", "ring n=2\nx3\n");
    let poly = write(&dir, "poly.ideal", KOHN);
    let unit = write(&dir, "unit.ideal", "ring n=2\nx1\n3\n");
    let code = |args: &[&str]| run(args).status.code();
    assert_eq!(code(&["ttype", bad.to_str().unwrap()]), Some(2));
    assert_eq!(code(&["ttype", dir.path().join("missing.ideal").to_str().unwrap()]), Some(2));
    assert_eq!(code(&["ttype", poly.to_str().unwrap()]), Some(3));
    assert_eq!(code(&["ttype", unit.to_str().unwrap()]), Some(3));
    assert_eq!(code(&["ttype"]), Some(2));
    assert_eq!(code(&["ttype", poly.to_str().unwrap(), "--json"]), Some(3));
}

#[test]
fn output_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "k.ideal", KOHN);
    let args = ["probe", file.to_str().unwrap(), "--json", "--seed", "11"];
    let a = run(&args).stdout;
    assert_eq!(a, run(&args).stdout);
    assert!(!String::from_utf8_lossy(&a).contains("elapsed_ms"));

    let timed = json("probe", &file, &["--timing"]);
    assert!(timed["elapsed_ms"].is_u64());
}

#[test]
fn generators_round_trip() {
    let doc = one("ttype", KOHN.replace("x^3 + x*y^2", "x^3*y").as_str(), &[]);
    let vars: Vec<&str> = doc["vars"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    let gens: Vec<&str> = doc["generators"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(vars, ["x", "y"]);
    let text = format!("ring n=2 vars={}\n{}\n", vars.join(","), gens.join("\n"));
    assert_eq!(one("ttype", &text, &[]), doc);
}

#[test]
fn oracle_flag() {
    let doc = one("ttype", MIXED, &["--oracle"]);
    let o = &doc["oracle"];
    assert_eq!(o["passed"], true);
    assert_eq!(o["brute_type"], "3/2");
    assert_eq!(o["weight_bound"], 12);
    assert!(o["points_checked"].as_u64().unwrap() > 0);
}

#[test]
fn batch_mode() {
    let dir = TempDir::new().unwrap();
    write(&dir, "c.ideal", LINE);
    write(&dir, "a.ideal", MIXED);
    write(&dir, "b.ideal", "ring n=2\nx1^\n");
    write(&dir, "notes.txt", "ignored");
    let path = dir.path().to_str().unwrap();
    let out = run(&["ttype", "--batch", path, "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    let files: Vec<&str> = entries.iter().map(|e| e["file"].as_str().unwrap()).collect();
    assert_eq!(files, ["a.ideal", "b.ideal", "c.ideal"]);
    assert_eq!(entries[0]["report"]["result"]["value"], "3/2");
    assert_eq!(entries[1]["exit_code"], 2);
    assert!(entries[1]["error"].as_str().unwrap().contains("line 2"));
    assert_eq!(entries[2]["report"]["result"]["value"], "2");
    assert_eq!(out.stdout, run(&["ttype", "--batch", path, "--json"]).stdout);
}

#[test]
fn human_output() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "a.ideal", MIXED);
    let out = run(&["nss", file.to_str().unwrap()]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("exponent N = 3"), "{text}");
    assert!(text.contains("x1^3*x2^3 divisible by"), "{text}");
}
