use std::path::Path;
use std::process::{Command, Output};

use knotinv_core::cli::AnalysisReport;
use knotinv_core::seifert::SeifertMatrix;
use serde_json::Value;

const TREFOIL: &str = r#"{"name": "3_1", "seifert": [[-1, 1], [0, -1]]}"#;

fn knotinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotinv")).args(args).env_remove("KNOTINV_JOBS").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn brackets(v: &SeifertMatrix) -> String {
    let rows: Vec<String> = v
        .entries()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn parse_plot(text: &str) -> Vec<(f64, i64, usize)> {
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,sigma,eta"));
    lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

/// Step integral of the plotted samples: each gap takes the value of an
/// endpoint off the roots.
fn plot_integral(rows: &[(f64, i64, usize)]) -> f64 {
    rows.windows(2)
        .map(|w| {
            let v = if w[0].2 == 0 { w[0].1 } else { w[1].1 };
            (w[1].0 - w[0].0) * v as f64
        })
        .sum()
}

fn report_integral(r: &Value) -> f64 {
    r["profile"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["arc"][1].as_f64().unwrap() - a["arc"][0].as_f64().unwrap()) * a["sigma"].as_f64().unwrap())
        .sum()
}

#[test]
fn analyze_trefoil() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "trefoil.json", TREFOIL);
    let plot = dir.path().join("plot.csv");
    let o = knotinv(&["analyze", &input, "--plot", plot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = stdout_json(&o);
    assert_eq!(r["n_r"], 1);
    assert_eq!(r["mu"], 1);
    assert_eq!(r["eta"], 1);
    assert_eq!(r["genus"], 1);
    let rows = parse_plot(&std::fs::read_to_string(&plot).unwrap());
    let jumps: Vec<f64> = rows.iter().filter(|r| r.2 > 0).map(|r| r.0).collect();
    assert_eq!(jumps.len(), 2);
    assert!((jumps[0] - 1.0 / 6.0).abs() < 1e-9);
    assert!((jumps[1] - 5.0 / 6.0).abs() < 1e-9);
    assert_eq!(rows.iter().map(|r| r.1).min(), Some(-2));
    assert_eq!(rows.iter().map(|r| r.1).max(), Some(0));
}

#[test]
fn plot_matches_profile() {
    let dir = tempfile::tempdir().unwrap();
    for (k, v) in [(1, SeifertMatrix::torus_2(1)), (2, SeifertMatrix::torus_2(2)), (3, SeifertMatrix::torus_2(3))] {
        let v = if k == 3 { v.connected_sum(&SeifertMatrix::from_i64(&[&[-1, 1], &[0, 1]]).unwrap()) } else { v };
        let text = format!(r#"{{"seifert": {}}}"#, brackets(&v));
        let input = write(dir.path(), "k.json", &text);
        let plot = dir.path().join("k.csv");
        let o = knotinv(&["analyze", "--input", &input, "--plot", plot.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let rows = parse_plot(&std::fs::read_to_string(&plot).unwrap());
        let r = stdout_json(&o);
        assert!((plot_integral(&rows) - report_integral(&r)).abs() < 1e-12, "knot {k}");
    }
}

#[test]
fn empty_matrix_is_trivial() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "empty.json", r#"{"name": "unknot", "seifert": []}"#);
    let o = knotinv(&["analyze", &input]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    for k in ["mu", "eta", "n_r", "genus", "unknotting_lower_bound"] {
        assert_eq!(r[k], 0, "{k}");
    }
    assert_eq!(r["alexander"], "1");
}

#[test]
fn analyze_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\"seifert\": [[1, 2]]}");
    assert_eq!(knotinv(&["analyze", &bad]).status.code(), Some(2));
    let garbage = write(dir.path(), "garbage.json", "not json");
    assert_eq!(knotinv(&["analyze", &garbage]).status.code(), Some(2));
    assert_eq!(knotinv(&["analyze", "/nonexistent/file.json"]).status.code(), Some(2));
    let singular = write(dir.path(), "singular.json", "{\"seifert\": [[1, 0], [0, 1]]}");
    assert_eq!(knotinv(&["analyze", &singular]).status.code(), Some(2));
    // det(V - Vᵗ) = 4: a Seifert matrix, but not of a knot
    let link = write(dir.path(), "link.json", "{\"seifert\": [[1, 2], [0, 1]]}");
    let o = knotinv(&["analyze", &link]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_json(&o)["error"], "NotAKnot");
}

#[test]
fn batch_torus_knots() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("name;seifert\n");
    for k in 1..=3 {
        text.push_str(&format!("T(2,{});{}\n", 2 * k + 1, brackets(&SeifertMatrix::torus_2(k))));
    }
    let input = write(dir.path(), "torus.csv", &text);
    let o = knotinv(&["--format", "csv", "batch", &input, "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rd = csv::Reader::from_reader(&o.stdout[..]);
    assert_eq!(rd.headers().unwrap(), vec!["name", "mu", "eta", "n_r", "lower_bound"]);
    let rows: Vec<csv::StringRecord> = rd.records().map(|r| r.unwrap()).collect();
    let n_r: Vec<&str> = rows.iter().map(|r| &r[3]).collect();
    assert_eq!(n_r, ["1", "2", "3"]);
    assert_eq!(&rows[0][0], "T(2,3)");
}

#[test]
fn batch_bad_row_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let text = "3_1;[[-1,1],[0,-1]]\nbroken;[[1,2]\n4_1;[[1,1],[0,-1]]\n";
    let input = write(dir.path(), "mixed.csv", text);
    let o = knotinv(&["batch", &input]);
    assert_eq!(o.status.code(), Some(0));
    let reports = stdout_json(&o);
    assert_eq!(reports.as_array().unwrap().len(), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2 (broken)"), "{err}");
}

#[test]
fn batch_without_rows_fails() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.csv", "");
    assert_eq!(knotinv(&["batch", &empty]).status.code(), Some(2));
    let bad = write(dir.path(), "bad.csv", "x;[[1]]\n");
    assert_eq!(knotinv(&["batch", &bad]).status.code(), Some(2));
}

#[test]
fn batch_jobs_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "one.csv", "3_1;[[-1,1],[0,-1]]\n");
    let o = Command::new(env!("CARGO_BIN_EXE_knotinv")).args(["batch", &input]).env("KNOTINV_JOBS", "1").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_knotinv")).args(["batch", &input]).env("KNOTINV_JOBS", "0").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn diagonalize_shared_root() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d.json", r#"["t - 1 + t^-1", "-t + 1 - t^-1"]"#);
    let o = knotinv(&["diagonalize", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    let r = stdout_json(&o);
    assert_eq!(r["size"], 2);
    assert_eq!(r["reason"], "eta-bound");
    assert_eq!(r["mu"], 2);
    assert_eq!(r["eta"], 2);
}

#[test]
fn diagonalize_merges() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "d.json", r#"["t - 1 + t^-1", "-t - 1 - t^-1", "t + 3 + t^-1"]"#);
    let r = stdout_json(&knotinv(&["diagonalize", &input]));
    assert_eq!(r["input_size"], 3);
    assert_eq!(r["size"], 1);
    // a Seifert matrix is accepted too
    let input = write(dir.path(), "k.json", TREFOIL);
    let r = stdout_json(&knotinv(&["diagonalize", &input]));
    assert_eq!(r["size"], 1);
}

#[test]
fn glue_example() {
    let o = knotinv(&["glue", "t+t^-1", "1-t-t^-1"]);
    assert_eq!(o.status.code(), Some(0));
    let r = stdout_json(&o);
    assert_eq!(r["epsilon"], 1);
    assert_eq!(r["merged"], "-t^-2 + t^-1 - 2 + t - t^2");
    assert!(r["witness"]["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn glue_failures() {
    let o = knotinv(&["glue", "t-1+t^-1", "t-1+t^-1"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(stdout_json(&o)["error"], "NotCoprime");
    let o = knotinv(&["glue", "t-1+t^-1", "-t-1-t^-1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["epsilon"], -1);
    let o = knotinv(&["glue", "t - 1 + t^-1", "-t - 1 - t^-1 + 0*t^5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(knotinv(&["glue", "t+", "1"]).status.code(), Some(2));
    assert_eq!(knotinv(&["glue", "t", "1"]).status.code(), Some(2));
}

#[test]
fn reports_round_trip_and_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let v = SeifertMatrix::torus_2(2).connected_sum(&SeifertMatrix::from_i64(&[&[-1, 1], &[0, 1]]).unwrap());
    let input = write(dir.path(), "k.json", &format!(r#"{{"name": "5_1#4_1", "seifert": {}}}"#, brackets(&v)));
    let a = knotinv(&["analyze", &input]);
    let b = knotinv(&["analyze", &input]);
    assert_eq!(a.stdout, b.stdout);
    let r: AnalysisReport = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", String::from_utf8(a.stdout).unwrap());
    assert_eq!(r.name.as_deref(), Some("5_1#4_1"));
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "k.json", TREFOIL);
    let cfg = write(dir.path(), "c.json", r#"{"plot_samples": 4, "format": "csv"}"#);
    let plot = dir.path().join("p.csv");
    let out = dir.path().join("out.csv");
    let o = knotinv(&["--config", &cfg, "-o", out.to_str().unwrap(), "analyze", &input, "--plot", plot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "name,mu,eta,n_r,lower_bound\n3_1,1,1,1,1\n");
    // 5 grid samples and 2 roots
    assert_eq!(parse_plot(&std::fs::read_to_string(&plot).unwrap()).len(), 7);
    let bad = write(dir.path(), "bad.json", r#"{"plot_samples": 1}"#);
    assert_eq!(knotinv(&["--config", &bad, "analyze", &input]).status.code(), Some(2));
    let unknown = write(dir.path(), "unknown.json", r#"{"colour": "red"}"#);
    assert_eq!(knotinv(&["--config", &unknown, "analyze", &input]).status.code(), Some(2));
    assert_eq!(knotinv(&["--tolerance", "-1", "analyze", &input]).status.code(), Some(2));
    assert_eq!(knotinv(&["frobnicate"]).status.code(), Some(2));
}
