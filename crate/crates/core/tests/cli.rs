use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nbspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbspectra")).args(args).output().unwrap()
}

fn nbspectra_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nbspectra")).args(args).env(key, value).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn build_petal_writes_json_and_matrix_market() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("nb.json");
    let run = nbspectra(&["build", "--gen", "petal:2,3", "--out", out.to_str().unwrap()]);
    assert!(run.status.success());
    let nb: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(nb["vertices"].as_array().unwrap().len(), 12);
    // center has degree 4, the rest degree 2: 4*3 + 4*2*1
    assert_eq!(nb["arcs"].as_array().unwrap().len(), 20);
    let mtx = fs::read_to_string(dir.path().join("nb.mtx")).unwrap();
    let mut lines = mtx.lines();
    assert_eq!(lines.next(), Some("%%MatrixMarket matrix coordinate pattern general"));
    assert_eq!(lines.next(), Some("12 12 20"));
    assert_eq!(lines.count(), 20);
}

#[test]
fn build_k4_from_graph6() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k4.g6", "C~\n");
    let nb = stdout_json(&nbspectra(&["build", "--in", &path]));
    assert_eq!(nb["vertices"].as_array().unwrap().len(), 12);
    assert_eq!(nb["arcs"].as_array().unwrap().len(), 24);
    assert_eq!(nb["vertices"][0], serde_json::json!([0, 1]));
    assert_eq!(nb["vertices"][6], serde_json::json!([1, 0]));
}

#[test]
fn edge_list_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "c4.txt", "# four-cycle\n0 1\n1 2\n2 3\n3 0\n");
    let nb = stdout_json(&nbspectra(&["build", "--in", &path]));
    assert_eq!(nb["arcs"].as_array().unwrap().len(), 8);
}

#[test]
fn missing_file_and_bad_input_exit_2() {
    let run = nbspectra(&["build", "--in", "/nonexistent/k4.g6"]);
    assert_eq!(run.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&run.stderr).contains("k4.g6"));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "0 0\n");
    assert_eq!(nbspectra(&["build", "--in", &bad]).status.code(), Some(2));
    assert_eq!(nbspectra(&["build"]).status.code(), Some(2));
    assert_eq!(nbspectra(&["spectrum", "--gen", "cycle:4", "--tol", "0.5"]).status.code(), Some(2));
    assert_eq!(nbspectra(&["spectrum", "--gen", "path:3"]).status.code(), Some(2));
}

#[test]
fn capability_exit_3() {
    assert_eq!(nbspectra(&["scan", "--max-n", "8"]).status.code(), Some(3));
    assert_eq!(nbspectra(&["independence", "--gen", "complete:9"]).status.code(), Some(3));
}

#[test]
fn threads_variable_is_validated() {
    let run = nbspectra_env(&["fraction", "2"], "NBSPECTRA_THREADS", "zero");
    assert_eq!(run.status.code(), Some(2));
    let run = nbspectra_env(&["fraction", "2"], "NBSPECTRA_THREADS", "2");
    assert_eq!(stdout_json(&run)["fraction"], "1/4");
}

#[test]
fn verify_petal_reports_epsilon() {
    let report = stdout_json(&nbspectra(&["verify", "--gen", "petal:2,3"]));
    let eps = report["epsilon"].as_f64().unwrap();
    assert!((eps - 3f64.powf(-1.0 / 3.0)).abs() < 1e-11);
    let statuses: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["status"].as_str().unwrap()).collect();
    assert!(!statuses.contains(&"fail"));
}

#[test]
fn verify_k4() {
    let report = stdout_json(&nbspectra(&["verify", "--gen", "complete:4"]));
    assert_eq!(report["epsilon"].as_f64(), Some(0.5));
}

#[test]
fn verify_cycle_skips_laplacian_checks() {
    let report = stdout_json(&nbspectra(&["verify", "--gen", "cycle:5"]));
    let checks = report["checks"].as_array().unwrap();
    let skipped: Vec<&Value> = checks.iter().filter(|c| c["status"] == "skipped").collect();
    assert!(skipped.iter().any(|c| c["name"] == "laplacian.p_adjoint"));
    assert!(skipped.iter().all(|c| c["note"] == "cycle graph"));
}

#[test]
fn spectrum_of_c4_and_char_poly() {
    let spec = stdout_json(&nbspectra(&["spectrum", "--gen", "cycle:4", "--char-poly"]));
    let vals: Vec<(f64, f64, u64)> = spec["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| (v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap(), v["mult"].as_u64().unwrap()))
        .collect();
    assert_eq!(vals, vec![(0.0, 0.0, 2), (1.0, -1.0, 2), (1.0, 1.0, 2), (2.0, 0.0, 2)]);
    // ((x-1)^4 - 1)^2 = x^8 - 8x^7 + ... with constant term 0
    let cp = spec["char_poly"].as_array().unwrap();
    assert_eq!(cp.len(), 9);
    assert_eq!(cp[0], "0");
    assert_eq!(cp[7], "-8");
    assert_eq!(cp[8], "1");
}

#[test]
fn spectrum_operators() {
    let adj = stdout_json(&nbspectra(&["spectrum", "--gen", "complete:4", "--operator", "adjacency"]));
    let vals: Vec<(f64, u64)> =
        adj["values"].as_array().unwrap().iter().map(|v| (v["re"].as_f64().unwrap(), v["mult"].as_u64().unwrap())).collect();
    assert_eq!(vals, vec![(-1.0, 3), (3.0, 1)]);
}

#[test]
fn gap_and_sweep() {
    let gap = stdout_json(&nbspectra(&["gap", "--gen", "complete:4"]));
    assert_eq!(gap["epsilon"].as_f64(), Some(0.5));
    assert_eq!(gap["lower_holds"], true);
    let run = nbspectra(&["gap", "--max-n", "5", "--format", "csv"]);
    assert!(run.status.success());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.starts_with("graph6,n,m,min_degree,max_degree,max_k,epsilon"));
    // min degree >= 2 classes on 3, 4, 5 vertices: 1 + 3 + 11, minus C3, C4, C5
    assert_eq!(text.lines().count(), 1 + 12);
    assert_eq!(nbspectra(&["gap", "--gen", "cycle:5"]).status.code(), Some(2));
}

#[test]
fn partite_json() {
    let rep = stdout_json(&nbspectra(&["partite", "--gen", "cycle:6"]));
    assert_eq!(rep["feasible_k"], serde_json::json!([1, 2, 3, 6]));
    assert_eq!(rep["max_k"], 6);
    assert_eq!(rep["witness"]["labels"].as_array().unwrap().len(), 12);
}

#[test]
fn independence_json() {
    let rep = stdout_json(&nbspectra(&["independence", "--gen", "complete:4"]));
    assert_eq!(rep["independence"]["alpha_out"], 4);
    assert_eq!(rep["inertia"].as_array().unwrap().len(), 2);
    let path = stdout_json(&nbspectra(&["independence", "--gen", "path:3"]));
    assert!(path.get("inertia").is_none());
}

#[test]
fn scan_csv_small() {
    let run = nbspectra(&["scan", "--max-n", "6"]);
    assert!(run.status.success());
    assert_eq!(String::from_utf8(run.stdout).unwrap(), "n,#graphs,A,L,𝒜,ℒ\n<=6,76,0,2,0,0\n");
}

#[test]
fn fraction_values() {
    assert_eq!(stdout_json(&nbspectra(&["fraction", "2"]))["fraction"], "1/4");
    assert_eq!(stdout_json(&nbspectra(&["fraction", "7"]))["fraction"], "0");
    assert_eq!(nbspectra(&["fraction", "0"]).status.code(), Some(2));
}

#[test]
fn plot_k4() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k4.svg");
    assert!(nbspectra(&["plot", "--gen", "complete:4", "--out", out.to_str().unwrap()]).status.success());
    let svg = fs::read_to_string(out).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="eigenvalue""#).count(), 5);
    assert!(svg.contains(r#"data-re="1.25" data-im="0.661437827766""#));
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["verify", "--gen", "wheel:6"][..],
        &["spectrum", "--gen", "petal:3,3"],
        &["plot", "--gen", "petal:2,4"],
        &["partite", "--gen", "bipartite:3,3"],
    ] {
        let a = nbspectra(args);
        let b = nbspectra(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
