use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ktx(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ktx"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> Output {
    let out = ktx(dir, args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn staircase_pipeline() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["--out", "s", "generate", "staircase", "--k", "10"]);
    assert_eq!(json(&d.join("s/polygon.json"))["vertices"].as_array().unwrap().len(), 22);
    ok(d, &["--out", "s", "cover", "s/polygon.json"]);
    assert_eq!(json(&d.join("s/cover.json"))["transmitters"].as_array().unwrap().len(), 2);
    ok(d, &["--out", "s", "verify", "s/polygon.json", "--cover", "s/cover.json"]);
    assert_eq!(json(&d.join("s/verify.json"))["uncovered_count"], 0);
    ok(d, &["--out", "s", "solve", "s/polygon.json"]);
    let rep = json(&d.join("s/solve.json"));
    assert_eq!(rep["lb"], 2);
    assert_eq!(rep["status"], "OK");
}

#[test]
fn comb_counts_and_cover_bound() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["--out", "c", "generate", "comb", "--l", "3"]);
    assert_eq!(json(&d.join("c/polygon.json"))["vertices"].as_array().unwrap().len(), 21);
    ok(d, &["--out", "c2", "generate", "comb", "--l", "2"]);
    let out = ok(d, &["--out", "c2", "cover", "c2/polygon.json"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("⌈(n−2)/8⌉ = 2"));
    assert!(json(&d.join("c2/cover.json"))["transmitters"].as_array().unwrap().len() <= 2);
}

#[test]
fn point_ring_is_not_monotone() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["--out", "r", "generate", "point-ring", "--g", "3"]);
    let out = ktx(d, &["--out", "r", "cover", "r/polygon.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("NOT_MONOTONE"));
}

#[test]
fn edge_ring_solve_reports_lower_bound() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["--out", "e", "generate", "edge-ring", "--g", "3"]);
    assert_eq!(json(&d.join("e/witnesses.json"))["witnesses"].as_array().unwrap().len(), 3);
    ok(d, &["--out", "e", "--grid", "10", "solve", "e/polygon.json"]);
    assert_eq!(json(&d.join("e/solve.json"))["lb"], 3);
}

#[test]
fn spike_box_from_line_file() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    fs::write(d.join("lines.json"), r#"{"lines": [[1, 0, 0], [0, 1, 0], [1, 1, 3]]}"#).unwrap();
    ok(d, &["--out", "b", "generate", "spike-box", "--lines", "lines.json", "--k", "2"]);
    let side = json(&d.join("b/witnesses.json"));
    assert_eq!(side["witnesses"].as_array().unwrap().len(), 6);
    assert_eq!(side["components"], 2);
    ok(d, &["--out", "b", "--grid", "10", "solve", "b/polygon.json"]);
    assert_eq!(json(&d.join("b/solve.json"))["lb"], 2);

    fs::write(d.join("par.json"), r#"{"lines": [[1, 1, 0], [2, 2, 1]]}"#).unwrap();
    let out = ktx(d, &["--out", "p", "generate", "spike-box", "--lines", "par.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("INVALID_LINESET"));
}

#[test]
fn render_viewbox_is_padded_bbox() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    ok(d, &["--out", "s", "generate", "staircase", "--k", "4"]);
    ok(d, &["--out", "s", "cover", "s/polygon.json"]);
    ok(d, &["--out", "s", "render", "s/polygon.json", "--cover", "s/cover.json"]);
    let svg = fs::read_to_string(d.join("s/render.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    assert!(svg.contains(r#"class="edge-tx""#));
    let vb: Vec<f64> = svg
        .split("viewBox=\"")
        .nth(1)
        .and_then(|s| s.split('"').next())
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse().unwrap())
        .collect();
    let poly = json(&d.join("s/polygon.json"));
    let coords: Vec<(f64, f64)> = poly["vertices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let f = |v: &Value| {
                let s = v.as_str().unwrap();
                match s.split_once('/') {
                    Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
                    None => s.parse().unwrap(),
                }
            };
            (f(&p[0]), f(&p[1]))
        })
        .collect();
    let x0 = coords.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let x1 = coords.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let y0 = coords.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let y1 = coords.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let (w, h) = (x1 - x0, y1 - y0);
    let close = |a: f64, b: f64| (a - b).abs() < 1e-9;
    assert!(close(vb[0], x0 - 0.05 * w) && close(vb[2], 1.1 * w));
    assert!(close(vb[1], -(y1 + 0.05 * h)) && close(vb[3], 1.1 * h));
}

#[test]
fn reruns_are_byte_identical() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    let run = || {
        ok(d, &["--out", "x", "--seed", "42", "generate", "random-monotone", "--n", "30"]);
        ok(d, &["--out", "x", "cover", "x/polygon.json"]);
        ok(d, &["--out", "x", "--grid", "8", "solve", "x/polygon.json"]);
        ["polygon.json", "witnesses.json", "cover.json", "solve.json"].map(|f| fs::read(d.join("x").join(f)).unwrap())
    };
    assert_eq!(run(), run());
    let poly = json(&d.join("x/polygon.json"));
    assert_eq!(poly["manifest"]["seed"], 42);
    assert_eq!(poly["manifest"]["subcommand"], "generate");
}

#[test]
fn exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path();
    assert_eq!(ktx(d, &["generate", "staircase"]).status.code(), Some(2));
    assert_eq!(ktx(d, &["generate", "point-ring", "--g", "2"]).status.code(), Some(2));
    let out = ktx(d, &["generate", "point-ring", "--g", "40"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("CONSTRAINT_UNSATISFIED"));
    fs::write(d.join("bad.json"), r#"{"vertices": [[0, 0], [2, 2], [2, 0], [0, 2]]}"#).unwrap();
    assert_eq!(ktx(d, &["cover", "bad.json"]).status.code(), Some(2));
    assert_eq!(ktx(d, &["solve", "missing.json"]).status.code(), Some(2));
}
