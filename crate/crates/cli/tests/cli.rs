use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::process::Command;

use heegaard_cli::{run, Output, Report};
use serde_json::Value;

fn heegaard(args: &[&str]) -> Output {
    let mut argv = vec!["heegaard"];
    argv.extend_from_slice(args);
    run(argv)
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let out = heegaard(&a);
    (serde_json::from_str(&out.stdout).expect("one JSON document"), out.code)
}

fn atlas_file(dir: &Path, name: &str, which: &[&str]) -> String {
    let path = dir.join(name).display().to_string();
    let mut args = vec!["atlas"];
    args.extend_from_slice(which);
    args.extend_from_slice(&["-o", &path]);
    assert_eq!(heegaard(&args).code, 0);
    path
}

/// Maximal runs of digits.
fn numbers(s: &str) -> BTreeSet<String> {
    s.split(|c: char| !c.is_ascii_digit()).filter(|t| !t.is_empty()).map(str::to_string).collect()
}

#[test]
fn shift_arithmetic() {
    let (r, code) = json(&["shift", "--c1sq", "0", "--chi", "2", "--sigma", "0"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["shift"], "-1");
    assert_eq!(r.payload["theta"], "-4");
    let (r, _) = json(&["shift", "--c1sq", "0", "--chi", "1", "--sigma", "0"]);
    assert_eq!(r.payload["gr0"], "0");
    let (r, _) = json(&["shift", "--c1sq", "-1/3", "--chi", "-1", "--sigma", "-1"]);
    assert_eq!(r.payload["theta"], "14/3");
    assert_eq!(heegaard(&["shift", "--c1sq", "x", "--chi", "0", "--sigma", "0"]).code, 2);
}

#[test]
fn lens_space_grading_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = atlas_file(dir.path(), "l31.hd", &["torus", "3", "1"]);
    let (r, code) = json(&["grade", &f]);
    assert_eq!(code, 0);
    let rows = r.payload["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert_eq!(r.payload["classes"].as_array().unwrap().len(), 3);
    assert!(rows.iter().all(|row| row["offset"] == 0));
    let d = r.digest.unwrap();
    assert_eq!((d.genus, d.vertices, d.edges, d.regions, d.h1.as_str()), (1, 3, 6, 3, "Z/3"));
}

#[test]
fn no_connecting_class_is_an_answer() {
    let dir = tempfile::tempdir().unwrap();
    let f = atlas_file(dir.path(), "l31.hd", &["torus", "3", "1"]);
    let (r, code) = json(&["domain", &f, "x0", "x1"]);
    assert_eq!(code, 0);
    assert_eq!(r.status, 0);
    assert_eq!(r.payload["connected"], false);
    assert_eq!(r.payload["result"], "no connecting class");
    assert!(r.payload.get("error").is_none());
    let (r, code) = json(&["audit", &f, "x2", "x1"]);
    assert_eq!((code, r.payload["connected"].clone()), (0, Value::Bool(false)));
}

#[test]
fn bigon_domain_and_audit() {
    let dir = tempfile::tempdir().unwrap();
    let f = atlas_file(dir.path(), "s.hd", &["s1s2"]);
    let (r, _) = json(&["domain", &f, "x0", "x1", "--positive"]);
    let p = &r.payload;
    assert_eq!((p["maslov"].clone(), p["grading"].clone(), p["n_z"].clone()), (1.into(), 1.into(), 0.into()));
    assert_eq!((p["euler"].as_str(), p["n_x"].as_str(), p["n_y"].as_str()), (Some("1/2"), Some("1/4"), Some("1/4")));
    let (r, _) = json(&["audit", &f, "x0", "x1"]);
    assert_eq!(r.payload["layer_sum"], "1");
    assert_eq!(r.payload["single_layer"], 1);
    assert_eq!(r.payload["layers"].as_array().unwrap().len(), 1);
    let (r, _) = json(&["generators", &f]);
    assert_eq!(r.payload["count"], 2);
    let (r, _) = json(&["spinc", &f]);
    assert_eq!(r.payload["classes"][0]["size"], 2);
}

#[test]
fn input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.hd");
    fs::write(&bad, "heegaard v1\ngenus: x\n").unwrap();
    let b = bad.display().to_string();
    let (r, code) = json(&["validate", &b]);
    assert_eq!((code, r.status), (1, 1));
    assert_eq!((r.payload["error"]["line"].clone(), r.payload["error"]["column"].clone()), (2.into(), 8.into()));
    let out = heegaard(&["validate", &b]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("2:8"), "{}", out.stderr);

    let missing = dir.path().join("none.hd").display().to_string();
    let (r, code) = json(&["info", &missing]);
    assert_eq!(code, 1);
    assert_eq!(r.payload["error"]["kind"], "io");

    let f = atlas_file(dir.path(), "s.hd", &["s1s2"]);
    let (r, code) = json(&["domain", &f, "x0", "x7"]);
    assert_eq!(code, 1);
    assert_eq!(r.payload["error"]["kind"], "generator");

    assert_eq!(heegaard(&["frobnicate"]).code, 2);
    assert_eq!(heegaard(&[]).code, 2);
    let help = heegaard(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("openbook") || help.stdout.contains("atlas"));
}

#[test]
fn atlas_and_stabilize_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = heegaard(&["atlas", "openbook-annulus", "-3"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("heegaard v1\n"));
    let f = dir.path().join("ob.hd");
    fs::write(&f, &out.stdout).unwrap();
    let fs_ = f.display().to_string();
    let (r, _) = json(&["validate", &fs_]);
    assert_eq!(r.digest.unwrap().h1, "Z/3");
    let (r, _) = json(&["atlas", "openbook-annulus", "2"]);
    assert_eq!(r.payload["contact"], "x0");
    assert_eq!(r.payload["diagram"].as_str().unwrap().lines().next(), Some("heegaard v1"));

    let st = dir.path().join("st.hd").display().to_string();
    let (r, code) = json(&["stabilize", &fs_, "-o", &st]);
    assert_eq!(code, 0);
    assert_eq!(r.digest.as_ref().unwrap().genus, 2);
    assert_eq!(r.payload["correspondence"].as_array().unwrap().len(), 5);
    let (g, _) = json(&["generators", &st]);
    assert_eq!(g.payload["count"], 5);
    assert_eq!(heegaard(&["atlas", "torus", "4", "2"]).code, 1);
}

#[test]
fn output_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let f = atlas_file(dir.path(), "t.hd", &["torus", "5", "2"]);
    let s = atlas_file(dir.path(), "s.hd", &["s1s2"]);
    let cases: Vec<Vec<&str>> = vec![
        vec!["info", &f],
        vec!["grade", &f],
        vec!["spinc", &s],
        vec!["domain", &s, "x1", "x0"],
        vec!["audit", &s, "x1", "x0"],
        vec!["--seed", "9", "selftest", "--cases", "5"],
    ];
    for args in cases {
        let mut a = vec!["--json"];
        a.extend(args.iter().copied());
        let first = heegaard(&a);
        assert_eq!(first, heegaard(&a));
        let r: Report = serde_json::from_str(&first.stdout).unwrap();
        assert_eq!(r.to_json(), first.stdout);

        let text = heegaard(&args);
        assert_eq!(text.code, first.code);
        let missing: Vec<String> = numbers(&text.stdout).difference(&numbers(&first.stdout)).cloned().collect();
        assert!(missing.is_empty(), "{args:?}: {missing:?}");
    }
}

#[test]
fn selftest_passes() {
    let (r, code) = json(&["--seed", "17", "selftest", "--cases", "30"]);
    assert_eq!(code, 0);
    assert_eq!(r.payload["failures"], 0);
    assert!(r.payload["checks"].as_u64().unwrap() > 100);
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_heegaard");
    let ok = Command::new(exe).args(["shift", "--c1sq", "0", "--chi", "2", "--sigma", "0"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("shift: -1"));
    let bad = Command::new(exe).arg("nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let missing = Command::new(exe).args(["validate", "/nonexistent/file.hd"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
