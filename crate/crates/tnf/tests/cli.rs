use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn tnf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tnf")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn config(dir: &TempDir, id: &str) -> PathBuf {
    let fx = tnf::fixtures::get(id).unwrap();
    let p = dir.path().join(format!("{}.json", id));
    std::fs::write(&p, fx.config.to_json()).unwrap();
    p
}

fn run(cfg: &Path, args: &[&str]) -> Output {
    let mut all = vec!["--config", cfg.to_str().unwrap()];
    all.extend_from_slice(args);
    tnf(&all)
}

#[test]
fn eval_prints_values() {
    let dir = TempDir::new().unwrap();
    let o = run(&config(&dir, "3.1.i"), &["eval", "0.7", "0.6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0.3\n"), "{}", stdout(&o));

    let o = run(&config(&dir, "3.1.iv"), &["eval", "0.75", "0.75"]);
    assert!(stdout(&o).starts_with("0.5\n"), "{}", stdout(&o));

    let o = run(&config(&dir, "id.min"), &["eval", "1/5", "0.9"]);
    let s = stdout(&o);
    assert!(s.contains("exact: 1/5") && s.contains("backend: exact"), "{}", s);
}

#[test]
fn eval_rejects_points_outside_the_square() {
    let dir = TempDir::new().unwrap();
    let o = run(&config(&dir, "3.1.i"), &["eval", "1.5", "0.2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = run(&config(&dir, "4.1.ii"), &["check", "--grid", "41"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("(iii)"));

    let o = run(&config(&dir, "3.1.iv"), &["check", "--grid", "41"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("witness"));

    let o = run(&config(&dir, "jump.nm"), &["check", "--grid", "41"]);
    assert_eq!(o.status.code(), Some(2), "{}", stdout(&o));
}

#[test]
fn check_exact_on_a_small_grid() {
    let dir = TempDir::new().unwrap();
    let o = run(&config(&dir, "3.1.ii"), &["check", "--grid", "11"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{}", s);
    assert!(s.contains("backend: exact"), "{}", s);
}

#[test]
fn classify_outputs() {
    let dir = TempDir::new().unwrap();
    let o = run(&config(&dir, "3.1.i"), &["classify"]);
    assert!(stdout(&o).starts_with("OrdinallyIrreducible"), "{}", stdout(&o));
    let o = run(&config(&dir, "6.tm"), &["classify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("TM"), "{}", stdout(&o));
}

#[test]
fn example_ids() {
    let o = tnf(&["example", "nope"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3.1.iv"));

    let o = tnf(&["example", "3.1.iv", "--grid", "41"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = tnf(&["example", "4.1.ii", "--dump"]);
    let doc = tnf::ConfigDoc::parse(&stdout(&o), "dump").unwrap();
    assert_eq!(doc, tnf::fixtures::get("4.1.ii").unwrap().config);
}

#[test]
fn surface_writes_sorted_rows() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("s.csv");
    let o = run(&config(&dir, "3.1.ii"), &["surface", "--grid", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert_eq!(r.headers().unwrap(), vec!["x", "y", "T"]);
    let rows: Vec<(f64, f64, f64)> = r.deserialize().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 25);
    assert!(rows.windows(2).all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1)));
    assert!(rows.contains(&(0.75, 0.75, 0.625)));
}

#[test]
fn surface_to_a_missing_directory_leaves_nothing() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("missing").join("s.csv");
    let o = run(&config(&dir, "id.min"), &["surface", "--grid", "3", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn usage_and_schema_errors() {
    assert_eq!(tnf(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(tnf(&["check"]).status.code(), Some(3));
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"generator": {"pieces": [], "value_at_one": 1}, "tnorm": {"kind": "min"}}"#).unwrap();
    let o = run(&bad, &["eval", "0.5", "0.5"]);
    assert_eq!(o.status.code(), Some(3));
    std::fs::write(&bad, "{ not json").unwrap();
    let o = run(&bad, &["check"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}
