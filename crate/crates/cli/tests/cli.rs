use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const JOUKOWSKI: &str = r#"{"kind":"laurent","leading":[1,0],"coeffs":[[0,0],[0.3,0]]}"#;
const ANNULUS: &str = r#"{"n":1,"sample_N":512,"maps":[
  {"kind":"taylor","center":[0,0],"coeffs":[[0.3,0]]},
  {"kind":"laurent","leading":[3,0],"coeffs":[[0,0]]}]}"#;

fn run(dir: &Path, input: &str, args: &[&str]) -> Output {
    let path = dir.join("input.json");
    std::fs::write(&path, input).unwrap();
    Command::new(env!("CARGO_BIN_EXE_grunskykit"))
        .args(args)
        .arg("--input")
        .arg(&path)
        .output()
        .unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

fn cplx(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn joukowski_faber_polynomials() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), JOUKOWSKI, &["faber", "--order", "3"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["side"], "interior");
    let phi2 = v["polys"][2]["coeffs"].as_array().unwrap();
    assert_eq!(phi2.len(), 3);
    let (re, im) = cplx(&phi2[0]);
    assert!((re + 0.6).abs() < 1e-15 && im.abs() < 1e-15);
    assert_eq!(cplx(&phi2[2]), (1.0, 0.0));
}

#[test]
fn identity_exterior_family_is_monomial() {
    let dir = tempfile::tempdir().unwrap();
    let map = r#"{"kind":"taylor","center":[0,0],"coeffs":[[1,0]]}"#;
    let o = run(dir.path(), map, &["--command", "faber", "--order", "4"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["side"], "exterior");
    for (i, p) in v["polys"].as_array().unwrap().iter().enumerate() {
        let cs = p["coeffs"].as_array().unwrap();
        for (l, z) in cs.iter().enumerate() {
            let want = if l == i { 1.0 } else { 0.0 };
            assert_eq!(cplx(z), (want, 0.0));
        }
    }
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), "{bad", &["grunsky"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "parse");
}

#[test]
fn conflicting_commands_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), JOUKOWSKI, &["faber", "--command", "grunsky"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "usage");
}

#[test]
fn annulus_rigging_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), ANNULUS, &["rigging-verify", "--order", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    let rep = &v["report"];
    assert!(rep["graph_residual"].as_f64().unwrap() < 1e-8);
    assert!(rep["wf_residual"].as_f64().unwrap() < 1e-10);
    let want = (1.0 + 2.0 * (1..=4).map(|k| 0.01f64.powi(k)).sum::<f64>()).sqrt();
    assert!((rep["hs_norm"].as_f64().unwrap() - want).abs() < 1e-10);
    assert_eq!(v["validation"]["valid"], true);
    assert_eq!(v["K"], 4);
}

#[test]
fn out_directory_gets_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let o = run(
        dir.path(),
        ANNULUS,
        &["rigging-verify", "--order", "2", "--out", out.to_str().unwrap()],
    );
    assert!(o.status.success());
    let written = stdout_json(&o)["written"].as_array().unwrap().len();
    assert_eq!(written, 2);
    let csv = std::fs::read_to_string(out.join("curves.csv")).unwrap();
    assert!(csv.starts_with("slot,theta,re,im\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 512);
}

#[test]
fn overlapping_caps_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = r#"{"n":2,"sample_N":256,"maps":[
      {"kind":"taylor","center":[0,0],"coeffs":[[1,0]]},
      {"kind":"taylor","center":[1.5,0],"coeffs":[[1,0]]},
      {"kind":"laurent","leading":[6,0],"coeffs":[[0,0]]}]}"#;
    let o = run(dir.path(), cfg, &["rigging-verify", "--order", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "overlap");
}

#[test]
fn order_beyond_budget_is_refused() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), ANNULUS, &["hs-norm", "--order", "16"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"]["kind"], "budget");
}

#[test]
fn tolerance_breach_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), ANNULUS, &["rigging-verify", "--order", "2", "--tolerance", "1e-30"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(!o.stdout.is_empty());
    assert!(!stderr_json(&o)["tolerance_exceeded"].as_array().unwrap().is_empty());
}

#[test]
fn jump_reconstructs_data() {
    let dir = tempfile::tempdir().unwrap();
    let input = format!(r#"{{"map":{JOUKOWSKI},"data":{{"K":2,"fourier":[[0,1],[0.5,0],[1,0],[0,0],[0,2]]}}}}"#);
    let o = run(dir.path(), &input, &["jump", "--samples", "256"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = stdout_json(&o);
    assert!(v["residual"].as_f64().unwrap() < 1e-10);
    assert_eq!(v["u_plus"]["K"], 127);
}

#[test]
fn output_is_byte_identical_across_runs_and_threads() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("input.json");
    std::fs::write(&path, ANNULUS).unwrap();
    let go = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_grunskykit"))
            .args(["rigging-verify", "--order", "4", "--input"])
            .arg(&path)
            .env("GRUNSKYKIT_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let a = go("1");
    assert_eq!(a, go("1"));
    assert_eq!(a, go("4"));
}

#[test]
fn report_lists_map_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), JOUKOWSKI, &["report", "--order", "5"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["orientation"], "positive");
    assert!(v["chord_arc"].as_f64().unwrap() >= 1.0);
    assert!(v["grunsky"]["route_agreement"].as_f64().unwrap() < 1e-12);
}
