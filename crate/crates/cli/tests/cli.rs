use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value as Json;

fn nccurv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nccurv")).args(args).output().expect("binary runs")
}

fn model(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join(format!("../core/models/{name}.model"))
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Json {
    serde_json::from_slice(&o.stderr).unwrap_or_else(|e| panic!("stderr is not JSON ({e}): {:?}", o.stderr))
}

fn write_model(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("m.model");
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn verify_bicrossproduct_succeeds() {
    let o = nccurv(&["verify-bicrossproduct"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for check in ["algebra", "d-tensor", "commutators", "corrected-christoffel", "v-basis", "non-central"] {
        assert!(text.contains(&format!("check {check}: pass")), "{check}\n{text}");
    }
    assert!(text.contains("Gamma~[x][t][x] = 2*b*t + lambda*b"), "{text}");
}

#[test]
fn latex_uses_bmatrix_with_upper_index_first() {
    let o = nccurv(&["christoffel", &model("bicrossproduct"), "--format", "latex"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\\tilde{\\Gamma}^{x} = \\begin{bmatrix}"), "{text}");
}

#[test]
fn order_zero_reports_the_classical_connection() {
    let o = nccurv(&["christoffel", &model("bicrossproduct"), "--order", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Gamma[x][t][t] = -2*b*x"), "{text}");
    let rows: Vec<_> = text.lines().filter(|l| l.starts_with("  Gamma")).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|l| !l.contains("lambda")), "{text}");
    assert_eq!(nccurv(&["christoffel", &model("bicrossproduct"), "--order", "2"]).status.code(), Some(2));
}

#[test]
fn ricci_includes_the_scalar_when_a_metric_is_known() {
    let o = nccurv(&["ricci", &model("hyperbolic2d"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let json: Json = serde_json::from_slice(&o.stdout).unwrap();
    let names: Vec<_> = json["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["ricci", "scalar"]);
    assert_eq!(json["entries"][1]["scalar"]["order0"], "-2");
}

#[test]
fn zero_tensor_json_is_marked() {
    let o = nccurv(&["riemann", &model("flat2d"), "--format", "json"]);
    let json: Json = serde_json::from_slice(&o.stdout).unwrap();
    let t = &json["entries"][0]["tensor"];
    assert_eq!(t["zero"], true);
    assert!(t["components"].as_object().unwrap().is_empty());
}

#[test]
fn out_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = nccurv(&["einstein", &model("bicrossproduct"), "--format", "json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let json: Json = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(json["entries"][0]["name"], "einstein");
    assert_eq!(json["ok"], true);
}

#[test]
fn export_model_matches_the_shipped_file() {
    let o = nccurv(&["export-model"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(model("bicrossproduct")).unwrap());
}

#[test]
fn parse_errors_are_located_json_on_stderr() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(&dir, "dimension: 2\ncoordinates: t, x\nmetric: 0 0 = 1 +\nmetric: 1 1 = q\n");
    let o = nccurv(&["validate", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = stderr_json(&o);
    assert_eq!(err["error"]["kind"], "model");
    let lines: Vec<_> = err["error"]["locations"].as_array().unwrap().iter().map(|l| l["line"].as_u64().unwrap()).collect();
    assert_eq!(lines, [3, 4]);
}

#[test]
fn missing_file_is_an_io_error() {
    let o = nccurv(&["riemann", "/nonexistent/model"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "io");
}

#[test]
fn unsolvable_centrality_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(&dir, "dimension: 2\ncoordinates: t, x\nmetric: 0 0 = 1\nmetric: 1 1 = x\nC: 1 0 1 = lambda\n");
    let o = nccurv(&["solve-s", &path]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("check solve-s: FAIL"));
    let o = nccurv(&["riemann", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["stage"], "calculus");
}

#[test]
fn solve_s_recovers_the_bicrossproduct_constants() {
    let o = nccurv(&["solve-s", &model("bicrossproduct-metric")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("unique solution"), "{text}");
    assert!(text.contains("S[t][t][t] = -lambda"), "{text}");
    assert!(text.contains("S[t][x][x] = -1/2*lambda"), "{text}");
}

#[test]
fn centrality_of_the_fixture_metric() {
    let o = nccurv(&["centrality", &model("bicrossproduct")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("check centrality: pass"));
}

#[test]
fn strict_turns_jacobi_warnings_into_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_model(
        &dir,
        "dimension: 3\ncoordinates: t, x, y\nmetric: 0 0 = 1\nmetric: 1 1 = 1\nmetric: 2 2 = 1\n\
         C: 0 1 0 = lambda\nC: 1 2 1 = lambda\nC: 0 2 2 = lambda\nS: 0 0 0 = 0\n",
    );
    let o = nccurv(&["validate", &path]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning: jacobi"));
    let o = nccurv(&["validate", &path, "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr_json(&o);
    assert_eq!(err["error"]["stage"], "algebra");
    assert_eq!(err["error"]["kind"], "invariant");
}
