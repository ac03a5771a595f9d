//! End-to-end runs of the `momentum` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    out: PathBuf,
    output: Output,
    _dir: Option<TempDir>,
}

impl Run {
    fn code(&self) -> i32 {
        self.output.status.code().unwrap_or(-1)
    }

    fn report(&self) -> Value {
        serde_json::from_slice(&std::fs::read(self.out.join("report.json")).unwrap()).unwrap()
    }

    fn table(&self, name: &str) -> String {
        std::fs::read_to_string(self.out.join("tables").join(name)).unwrap()
    }

    fn stdout(&self) -> String {
        String::from_utf8_lossy(&self.output.stdout).into_owned()
    }
}

fn momentum(dir: &TempDir, sub: &str, task: &str, extra: &[&str]) -> Run {
    let n = std::fs::read_dir(dir.path()).unwrap().count();
    let file = dir.path().join(format!("task{n}.json"));
    std::fs::write(&file, task).unwrap();
    let out = dir.path().join(format!("out{n}"));
    let output = Command::new(env!("CARGO_BIN_EXE_momentum"))
        .arg(sub)
        .arg("--task")
        .arg(&file)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .env_remove("MOMENTUM_OUT")
        .output()
        .unwrap();
    Run { out, output, _dir: None }
}

fn owned(sub: &str, task: &str) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let run = momentum(&dir, sub, task, &[]);
    Run { _dir: Some(dir), ..run }
}

fn analyze(task: &str) -> Run {
    owned("analyze", task)
}

fn sweep(task: &str) -> Run {
    owned("sweep", task)
}

const D2: &str = r#"{"preset":{"kind":"flat_plane","beta":"-1"}}"#;

#[test]
fn c0_on_d2_is_zero() {
    let run = analyze(&format!(r#"{{"data":{D2},"task":"c0"}}"#));
    assert_eq!(run.code(), 0, "{}", String::from_utf8_lossy(&run.output.stderr));
    assert_eq!(run.report()["c0"], "0");
    assert!(run.stdout().starts_with("c0"), "{}", run.stdout());
}

#[test]
fn float_mode_agrees_on_d2() {
    let dir = tempfile::tempdir().unwrap();
    let run = momentum(&dir, "analyze", &format!(r#"{{"data":{D2},"task":"c0"}}"#), &["--mode", "float"]);
    assert_eq!(run.code(), 0);
    let r = run.report();
    assert_eq!(r["mode"], "float");
    assert_eq!(r["c0"], "0");
}

#[test]
fn eguchi_hanson_is_ricci_flat() {
    let run = analyze(r#"{"data":{"preset":{"kind":"d1","k":2}},"task":"einstein","parameters":{"c":"0"}}"#);
    assert_eq!(run.code(), 0);
    assert_eq!(run.report()["einstein"]["lambda"], "0");
}

#[test]
fn table2_has_six_rows() {
    let run = analyze(r#"{"task":"table2"}"#);
    assert_eq!(run.code(), 0);
    let csv = run.table("table2.csv");
    assert!(!csv.contains('\r'));
    assert!(csv.ends_with('\n'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 7);
    assert!(lines[0].starts_with("row,interval,phi,r_range"));
    assert_eq!(run.report()["tables"][0], "tables/table2.csv");
}

#[test]
fn coords_tables_are_written() {
    let run = analyze(r#"{"data":{"preset":{"kind":"d1","k":1}},"task":"coords","parameters":{"c":"-1","r_samples":[0.5,1,2]}}"#);
    assert_eq!(run.code(), 0);
    let conformal = run.table("conformal.csv");
    assert_eq!(conformal.lines().next(), Some("tau,t,s,r,phi,phi_over_r"));
    assert_eq!(conformal.lines().count(), 4);
    assert!(run.table("coords.csv").lines().count() > 1);
}

#[test]
fn sweep_c_flips_at_zero_on_d1() {
    let run = sweep(
        r#"{"data":{"preset":{"kind":"d1","k":1}},"task":"profile",
            "parameters":{"sweep":{"parameter":"c","from":"-2","to":"1/2","step":"1/20"}}}"#,
    );
    assert_eq!(run.code(), 0, "{}", String::from_utf8_lossy(&run.output.stderr));
    let r = run.report();
    assert_eq!(r["sweep"]["count"], 51);
    assert_eq!(r["positivity_flip"], serde_json::json!(["0", "1/20"]));
    let csv = run.table("sweep.csv");
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows.len(), 51);
    assert!(rows[0].starts_with("-2,true"));
    assert!(rows[50].starts_with("1/2,false"));
}

#[test]
fn sweep_b_on_symmetric_data_has_zero_futaki() {
    let run = sweep(
        r#"{"data":{"blocks":[{"beta":"-1/2","multiplicity":1,"ricci_trace":"1"},{"beta":"1/2","multiplicity":1,"ricci_trace":"1"}],
                    "interval":{"lower":"-3/2","upper":"3/2","closed_lower":false,"closed_upper":false}},
            "task":"extremal","parameters":{"sweep":{"parameter":"b","from":"1/10","to":"1","step":"1/10"}}}"#,
    );
    assert_eq!(run.code(), 0, "{}", String::from_utf8_lossy(&run.output.stderr));
    let r = run.report();
    assert_eq!(r["sweep"]["count"], 10);
    assert_eq!(r["futaki_zero_rows"], 10);
}

#[test]
fn collapse_sweep_stays_bounded_below() {
    let run = sweep(
        r#"{"data":{"preset":{"kind":"stable_curve_bundle","g":2,"n":2,"k":-2,"s":"3"}},"task":"c0",
            "parameters":{"sweep":{"parameter":"collapse","from":"1/100","to":"1","step":"1/100"}}}"#,
    );
    assert_eq!(run.code(), 0, "{}", String::from_utf8_lossy(&run.output.stderr));
    let csv = run.table("sweep.csv");
    assert_eq!(csv.lines().next(), Some("a,c0,attained"));
    let c0: Vec<f64> = csv.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(c0.len(), 100);
    assert!(c0.iter().all(|x| x.is_finite()));
}

#[test]
fn sweeps_are_deterministic() {
    let task = r#"{"data":{"preset":{"kind":"d1","k":3}},"task":"profile",
                   "parameters":{"sweep":{"parameter":"c","from":"-1","to":"1","step":"1/8"}}}"#;
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (momentum(&dir, "sweep", task, &[]), momentum(&dir, "sweep", task, &[]));
    assert_eq!(a.table("sweep.csv"), b.table("sweep.csv"));
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("tables");
        v
    };
    assert_eq!(strip(a.report()), strip(b.report()));
}

fn assert_invalid(run: &Run) {
    assert_eq!(run.code(), 2);
    let r = run.report();
    assert_eq!(r["error"]["exit_code"], 2);
    let stderr: Value = serde_json::from_slice(&run.output.stderr).unwrap();
    assert_eq!(stderr, r);
}

#[test]
fn unknown_fields_exit_2() {
    let run = analyze(r#"{"task":"c0","data":{"preset":{"kind":"d1","k":1}},"colour":"red"}"#);
    assert_invalid(&run);
    assert_eq!(run.report()["error"]["kind"], "invalid-input");
}

#[test]
fn malformed_inputs_exit_2() {
    for task in [
        "not json",
        r#"{"task":"c0","data":{"blocks":[{"beta":"x","multiplicity":1,"ricci_trace":"0"}]}}"#,
        r#"{"task":"profile","data":{"preset":{"kind":"d1","k":1}}}"#,
        r#"{"task":"c0","data":{"blocks":[{"beta":"1","multiplicity":1,"ricci_trace":"0"}]}}"#,
    ] {
        assert_invalid(&analyze(task));
    }
    assert_invalid(&sweep(
        r#"{"task":"c0","data":{"preset":{"kind":"d1","k":1}},"parameters":{"sweep":{"parameter":"c","from":"1","to":"0","step":"1"}}}"#,
    ));
}

#[test]
fn missing_task_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let status = Command::new(env!("CARGO_BIN_EXE_momentum"))
        .args(["analyze", "--task"])
        .arg(dir.path().join("absent.json"))
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(2));
    assert!(out.join("report.json").exists());
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let task = dir.path().join("task.json");
    std::fs::write(&task, format!(r#"{{"data":{D2},"task":"c0"}}"#)).unwrap();
    let out = dir.path().join("env-out");
    let status = Command::new(env!("CARGO_BIN_EXE_momentum"))
        .args(["analyze", "--task"])
        .arg(&task)
        .env("MOMENTUM_OUT", &out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    assert!(Path::new(&out).join("report.json").exists());
}

#[test]
fn output_paths_are_configurable() {
    let run = analyze(r#"{"task":"table2","outputs":{"report":"r.json","tables":"csv"}}"#);
    assert_eq!(run.code(), 0);
    assert!(run.out.join("r.json").exists());
    assert!(run.out.join("csv/table2.csv").exists());
}
