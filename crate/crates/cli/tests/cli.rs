use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn harmvol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_harmvol"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn table_has_sixty_agreeing_rows_at_genus_two() {
    let out = harmvol(&["table", "--g", "2", "--nu", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let tables = v["tables"].as_array().unwrap();
    assert_eq!(tables.len(), 1);
    let rows = tables[0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 60);
    for r in rows {
        assert_eq!(r["agree"], true, "{r}");
        assert_eq!(r["combinatorial"], r["composed"]);
        assert_eq!(r["composed"], r["table"]);
    }
    let row = rows.iter().find(|r| r["element"] == "x1⊗x2⊗y1").unwrap();
    assert_eq!(row["table"], "1/2");
    assert!(row["numeric"]["lattice_distance"].as_f64().unwrap() < 1e-5);
}

#[test]
fn table_for_all_nu_has_one_table_per_weierstrass_point() {
    let out = harmvol(&["table", "--g", "2", "--nu", "all", "--format", "json", "--engines", "exact"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let nus: Vec<u64> = v["tables"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t["nu"].as_u64().unwrap())
        .collect();
    assert_eq!(nus, vec![0, 1, 2, 3, 4, 5]);
    assert!(v["tables"][0]["rows"][0].get("numeric").is_none());
}

#[test]
fn table_renders_markdown_and_csv() {
    let md = harmvol(&["table", "--g", "2", "--nu", "3", "--engines", "exact"]);
    let md = String::from_utf8(md.stdout).unwrap();
    assert!(md.contains("| 3 | 1 | x1⊗x2⊗y1 | 1/2 | 1/2 | 1/2 | yes |"), "{md}");
    let csv = harmvol(&["table", "--g", "2", "--nu", "3", "--engines", "table", "--format", "csv"]);
    let csv = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "nu,index,case,element,table,agree");
    assert_eq!(lines.len(), 61);
}

#[test]
fn eval_reports_one_half_on_the_first_example() {
    let out = harmvol(&["eval", &data("example_one.json"), "--nu", "3", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let row = &v["values"][0];
    for k in ["combinatorial", "kappa_prime", "composed", "table"] {
        assert_eq!(row[k], "1/2", "{k}");
    }
    assert!((row["numeric"]["value"].as_f64().unwrap() - 0.5).abs() < 1e-5);
}

#[test]
fn eval_of_zero_tensor_is_zero_at_every_nu() {
    let out = harmvol(&["eval", &data("zero.json"), "--engines", "exact", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["values"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["combinatorial"] == "0" && r["composed"] == "0"));
}

#[test]
fn eval_rejects_tensors_outside_k() {
    let out = harmvol(&["eval", &data("not_in_k.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("pairing contraction = 1 ≠ 0"), "{}", stderr(&out));
}

#[test]
fn eval_reports_parse_location() {
    let out = harmvol(&["eval", &data("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"), "{}", stderr(&out));
    let out = harmvol(&["eval", &data("example_one.json"), "--g", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_engines_passes_at_genus_two() {
    let out = harmvol(&["verify", "--g", "2", "--engines", "all"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["version"], 1);
    let suites = v["suites"].as_array().unwrap();
    let names: Vec<&str> = suites.iter().map(|s| s["name"].as_str().unwrap()).collect();
    for n in ["exact-engines", "kappa-prime", "relation-kill", "numeric-periods", "numeric-i-q0", "chen-laws"] {
        assert!(names.contains(&n), "{n} missing from {names:?}");
    }
    for s in suites {
        assert_eq!(s["failures"].as_array().unwrap().len(), 0, "{s}");
        assert!(s["cases"].as_u64().unwrap() > 0);
        assert!(s["seconds"].is_null());
    }
}

#[test]
fn verify_exact_only_skips_numeric_suites() {
    let out = harmvol(&["verify", "--g", "4", "--engines", "exact", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    assert!(v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .all(|s| !s["name"].as_str().unwrap().starts_with("numeric")));
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<String> = (0..2)
        .map(|k| dir.path().join(format!("r{k}.json")).to_string_lossy().into_owned())
        .collect();
    for p in &paths {
        let out = harmvol(&["verify", "--g", "2", "--seed", "7", "--samples", "100", "--out", p]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b);
}

#[test]
fn unreachable_tolerance_fails_verification() {
    // below the rounding floor of 53-bit arithmetic
    let out = harmvol(&["verify", "--g", "2", "--engines", "numeric", "--precision", "53", "--tol-iterated", "1e-20"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let setup = &v["suites"][0];
    assert_eq!(setup["name"], "numeric-setup");
    assert!(setup["failures"][0]["detail"].as_str().unwrap().contains("converge"));
    let out = harmvol(&["verify", "--g", "2", "--engines", "numeric", "--tol-iterated", "1e-40"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["table"][..],
        &["table", "--g", "9"],
        &["table", "--g", "2", "--nu", "6"],
        &["table", "--g", "4", "--engines", "numeric"],
        &["table", "--g", "2", "--engines", "bogus"],
        &["verify", "--g", "2", "--tol-line", "-1"],
        &["frobnicate"],
    ] {
        let out = harmvol(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }
}
