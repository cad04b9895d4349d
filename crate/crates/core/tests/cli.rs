use std::process::{Command, Output};

use serde_json::Value;

fn cube_orient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cube-orient"))
        .args(args)
        .env_remove("CUBE_ORIENT_JOBS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn without_duration(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("duration_ms");
    v
}

#[test]
fn verify_exhaustive_q4() {
    let out = cube_orient(&["verify", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["experiment"], "verify");
    assert_eq!(v["parameters"]["k"], 2);
    assert_eq!(v["outcome"]["total"], 2970);
    assert_eq!(v["outcome"]["fail"], 0);
}

#[test]
fn verify_sample_is_deterministic_modulo_timing() {
    let args = ["verify", "--dim", "6", "--mode", "sample", "--samples", "20", "--seed", "3"];
    let a = json(&cube_orient(&args));
    let b = json(&cube_orient(&args));
    assert_eq!(a["outcome"]["pass"], 20);
    assert_eq!(a["parameters"]["steps"], 1920);
    assert_eq!(without_duration(a), without_duration(b));
}

#[test]
fn verify_rejects_odd_dimension() {
    let out = cube_orient(&["verify", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd degree"));
}

#[test]
fn jobs_env_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_cube-orient"))
        .args(["verify", "--dim", "4", "--mode", "sample", "--samples", "8"])
        .env("CUBE_ORIENT_JOBS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["outcome"]["pass"], 8);
}

#[test]
fn harper_csv_table() {
    let out = cube_orient(&["--format", "csv", "harper", "--dim", "6", "--m-max", "17"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("m,harper_bv,oracle,oracle_kind,bound,bound_satisfied"));
    let rows: Vec<_> = lines.collect();
    assert_eq!(rows.len(), 17);
    assert!(rows[16].starts_with("17,23,23,hamming_ball,"), "{}", rows[16]);
}

#[test]
fn harper_writes_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q4.json");
    let out = cube_orient(&["harper", "--dim", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 8);
    assert_eq!(json(&out)["experiment"], "harper");
}

#[test]
fn construct_and_counterexample_files() {
    let dir = tempfile::tempdir().unwrap();
    let q6 = dir.path().join("q6.cubeorient");
    let out = cube_orient(&["construct", "--k", "3", "--out", q6.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let o = cube_orient::format::read_file(&q6).unwrap();
    assert!(o.is_eulerian() && o.dim().get() == 6);

    let q3 = dir.path().join("q3.cubeorient");
    let out = cube_orient(&["counterexample", "--out", q3.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let o = cube_orient::format::read_file(&q3).unwrap();
    assert!(o.is_smooth() && !o.is_eulerian());
}

#[test]
fn enumerate_and_facts() {
    let v = json(&cube_orient(&["enumerate", "--dim", "4"]));
    assert_eq!(v["outcome"]["fail"], 0);
    assert!(v.to_string().contains("2970"));

    let out = cube_orient(&["--format", "csv", "facts", "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("experiment,total,pass,fail"));

    assert_eq!(cube_orient(&["facts", "--k", "99"]).status.code(), Some(2));
}
