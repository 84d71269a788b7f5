use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mt_core::io::{from_json, CertificateDoc, CurveDoc, PointDoc, TraceDoc};

fn mt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mt")).env_remove("MT_TRUNC").args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const CUSP: &str = r#"{"trunc":32,"x":{"2":"1"},"y":{"3":"1"},"z":{}}"#;
const LINE: &str = r#"{"trunc":16,"x":{"1":"1"},"y":{},"z":{}}"#;
const CASE_ONE: &str = r#"{"trunc":24,"x":{"3":"1","4":"1"},"y":{"5":"1"},"z":{"7":"1"}}"#;

#[test]
fn cusp_code() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = write(dir.path(), "cusp.json", CUSP);
    let o = mt(&["rvt", "--curve", s(&cusp), "--level", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "\"RVR\"\n");
    assert_eq!(stdout(&mt(&["rvt", "--curve", s(&cusp), "--level", "3", "--table"])), "RVR\n");
}

#[test]
fn census_table_totals() {
    let o = mt(&["census", "--level", "4", "--table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.ends_with("total 34\n"), "{text}");
    assert_eq!(text.lines().count(), 25);
}

#[test]
fn line_prolongs_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let line = write(dir.path(), "line.json", LINE);
    let o = mt(&["prolong", "--curve", s(&line), "--level", "2"]);
    assert!(o.status.success());
    let p: PointDoc = from_json(&stdout(&o)).unwrap();
    assert_eq!(p.level, 2);
    assert!(p.coords.iter().all(|c| c == "0"));
    p.to_point().unwrap();
}

#[test]
fn domain_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"trunc":8,"x":{"2":"1/0"},"y":{},"z":{}}"#);
    let o = mt(&["semigroup", "--curve", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "parse");

    let missing = dir.path().join("nope.json");
    let o = mt(&["semigroup", "--curve", s(&missing)]);
    assert_eq!(o.status.code(), Some(1));

    let cusp = write(dir.path(), "cusp.json", CUSP);
    let o = mt(&["--trunc", "4", "rvt", "--curve", s(&cusp), "--level", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "insufficient_truncation");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(mt(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(mt(&["classes"]).status.code(), Some(2));
    assert_eq!(mt(&["verify", "--suite", "other"]).status.code(), Some(2));
}

#[test]
fn reduce_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "case.json", CASE_ONE);
    let first = mt(&["reduce", "--curve", s(&c)]);
    assert!(first.status.success());
    // identical invocations give identical bytes
    assert_eq!(first.stdout, mt(&["reduce", "--curve", s(&c)]).stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(v["code"], "RVV");
    assert_eq!(v["normal_form"]["x"]["3"], "1");
    let trace_text = serde_json::to_string(&v["trace"]).unwrap();
    let trace: TraceDoc = from_json(&trace_text).unwrap();
    let path = write(dir.path(), "trace.json", &trace_text);
    let o = mt(&["replay", "--trace", s(&path)]);
    assert!(o.status.success());
    let out: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out["steps"], trace.steps.len());
    assert_eq!(out["output"], v["normal_form"]);
}

#[test]
fn tampered_trace_fails() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(dir.path(), "case.json", CASE_ONE);
    let v: serde_json::Value = serde_json::from_str(&stdout(&mt(&["reduce", "--curve", s(&c)]))).unwrap();
    let mut trace = v["trace"].clone();
    trace["input"]["y"]["5"] = "2".into();
    let path = write(dir.path(), "trace.json", &trace.to_string());
    let o = mt(&["replay", "--trace", s(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("verification"));
}

#[test]
fn equivalence_certificate_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.json", r#"{"trunc":32,"x":{"3":"1"},"y":{"5":"1","7":"-1"},"z":{}}"#);
    let b = write(dir.path(), "b.json", r#"{"trunc":32,"x":{"3":"1"},"y":{"5":"1"},"z":{}}"#);
    let o = mt(&["equiv", "--left", s(&a), "--right", s(&b)]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equivalent");
    let cert: CertificateDoc = from_json(&v["certificate"].to_string()).unwrap();
    let cert = cert.to_certificate().unwrap();
    let left: CurveDoc = from_json(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let right: CurveDoc = from_json(&std::fs::read_to_string(&b).unwrap()).unwrap();
    assert!(cert.verify(&left.to_curve().unwrap(), &right.to_curve().unwrap()).unwrap());

    let c = write(dir.path(), "c.json", r#"{"trunc":32,"x":{"3":"1"},"y":{"5":"1"},"z":{"7":"1"}}"#);
    let o = mt(&["equiv", "--left", s(&b), "--right", s(&c), "--table"]);
    assert!(stdout(&o).starts_with("separated by semigroup"));
}

#[test]
fn apply_jet_to_curve_and_point() {
    let dir = tempfile::tempdir().unwrap();
    let cusp = write(dir.path(), "cusp.json", CUSP);
    let phi = write(dir.path(), "phi.json", r#"{"degree":2,"phi1":{"1,0,0":"2"},"phi2":{"0,1,0":"1","2,0,0":"1"},"phi3":{"0,0,1":"1"}}"#);
    let o = mt(&["apply", "--diffeo", s(&phi), "--curve", s(&cusp)]);
    assert!(o.status.success());
    let image: CurveDoc = from_json(&stdout(&o)).unwrap();
    assert_eq!(image.x.0[0].0, 2);
    assert_eq!(image.y.0.iter().map(|t| t.0).collect::<Vec<_>>(), [3, 4]);

    let point = write(dir.path(), "p.json", r#"{"level":1,"chart":[0],"coords":["0","0","0","1","0"]}"#);
    let o = mt(&["apply", "--diffeo", s(&phi), "--point", s(&point)]);
    assert!(o.status.success(), "{}", stdout(&o));
    let q: PointDoc = from_json(&stdout(&o)).unwrap();
    // u = dy/dx at 0 becomes 1/2
    assert_eq!(q.coords, ["0", "0", "0", "1/2", "0"]);
}

#[test]
fn classes_listing() {
    let o = mt(&["classes", "--level", "3"]);
    let v: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v, ["RRR", "RRV", "RVR", "RVV", "RVT", "RVL"]);
}
