use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grassmann-mu"));
    c.env_remove("GRASSMANN_MU_CAP");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn report(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .display()
        .to_string()
}

#[test]
fn homology_reports_degree_four() {
    let v = report(&["homology", "--n", "8", "--qmax", "4"]);
    assert_eq!(v["result"]["groups"][4], json!({"q": 4, "free_rank": 1, "torsion": []}));
    assert_eq!(v["certificates"]["boundary_squared_zero"], true);
    assert_eq!(v["certificates"]["smith_remultiplication"], true);
    assert_eq!(v["certificates"]["euler_consistency"], true);

    let seven = report(&["homology", "--n", "7", "--qmax", "4"]);
    assert_eq!(
        seven["result"]["groups"][4],
        json!({"q": 4, "free_rank": 2, "torsion": []})
    );
}

#[test]
fn homology_of_three_planes_in_r3() {
    let v = report(&["homology", "--n", "3", "--qmax", "0"]);
    assert_eq!(v["result"]["groups"][0]["q"], 0);
    assert_eq!(v["result"]["groups"][0]["free_rank"], 2);
}

#[test]
fn degree_four_stabilizes() {
    let a = report(&["homology", "--n", "8", "--qmax", "4"]);
    let b = report(&["homology", "--n", "9", "--qmax", "4"]);
    assert_eq!(a["result"]["groups"][4], b["result"]["groups"][4]);
}

#[test]
fn reports_are_byte_identical_and_carry_config() {
    let a = run(&["homology", "--n", "6", "--seed", "5"]);
    let b = run(&["homology", "--n", "6", "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["config"]["cap"], 12);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn out_flag_writes_json_and_prints_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gen.json");
    let out = run(&["generator", "--n", "9", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("S_9"), "{stdout}");
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"]["is_cycle"], true);
    assert_eq!(v["result"]["class_coordinate"].as_i64().unwrap().abs(), 1);
}

#[test]
fn generator_rejects_small_n() {
    let out = run(&["generator", "--n", "6"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid argument"));
}

#[test]
fn cap_comes_from_environment() {
    let out = bin().args(["homology", "--n", "13"]).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 12"));
    let out = bin()
        .env("GRASSMANN_MU_CAP", "5")
        .args(["homology", "--n", "6"])
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 5"));
}

#[test]
fn curvature_examples() {
    let flat = report(&["curvature", "--connection", &data("flat.json")]);
    assert_eq!(flat["result"]["in_nu_p"], true);
    assert_eq!(flat["result"]["sigma"], json!([0.0, 0.0, 0.0]));

    let bpst = report(&["curvature", "--connection", &data("bpst.json"), "--h", "1e-3"]);
    assert_eq!(bpst["result"]["in_nu_p"], false);
    assert!(bpst["result"]["f_plus_norm"].as_f64().unwrap() < 1e-6);
    assert!(bpst["result"]["radial_residual"].as_f64().unwrap() < 1e-14);

    let lin = report(&[
        "curvature",
        "--connection",
        &data("linear_rank1.json"),
        "--point",
        "0,0,0,0",
    ]);
    assert_eq!(lin["result"]["in_nu_p"], true);
    assert!(lin["result"]["sigma"][1].as_f64().unwrap() < 1e-10);
    assert_eq!(lin["result"]["M"][0][0], -1.0);
}

#[test]
fn malformed_descriptor_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"kind":"bpst","center":[0,0,0],"lambda":1}"#).unwrap();
    let out = run(&["curvature", "--connection", path.to_str().unwrap()]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("parse error at `center"), "{stderr}");
}

#[test]
fn scan_rows() {
    let v = report(&[
        "scan",
        "--connection",
        &data("bpst.json"),
        "--point",
        "0.5,0,0,-0.5",
        "--steps",
        "4",
    ]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    for row in rows {
        assert!(row["params"]["t"].is_number());
        assert!(row["sigma2"].as_f64().unwrap() > 0.0);
        assert_eq!(row["in_nu_p"], false);
    }
}

#[test]
fn export_writes_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let v = report(&[
        "export",
        "--n",
        "5",
        "--qmax",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(v["result"]["files"].as_array().unwrap().len(), 7);
    let d2 = std::fs::read_to_string(dir.path().join("d2.txt")).unwrap();
    let m = grassmann_mu::intlattice::IntMatrix::parse_text(&d2).unwrap();
    assert_eq!(m, grassmann_mu::schubert::boundary_matrix(5, 2).unwrap());
}
