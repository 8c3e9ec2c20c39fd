use std::process::{Command, Output};

use serde_json::Value;

fn pform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pform"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const HALF: &str = r#"{"format":"pform/1","d":1,"m":2,"Q":[["1"]],"t":[["1/2"]]}"#;
const TWO_FIFTHS: &str = r#"{"format":"pform/1","d":1,"m":2,"Q":[["1"]],"t":[["2/5"]]}"#;
const OVERLAP: &str = r#"{"format":"pform/1","d":1,"m":2,"Q":[["1"]],"t":[["0"]]}"#;
const DIAG12: &str = r#"{"format":"pform/1","d":2,"m":1,"Q":[["1","0"],["0","2"]],"t":[]}"#;

#[test]
fn min_of_e8_and_shifted_line() {
    let o = pform(&["min", "catalog:E8"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("lambda = 2, 120 classes"));

    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "half.json", HALF);
    let o = pform(&["--json", "min", &f]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], "1/4");
    assert_eq!(v["classes"], 2);
}

#[test]
fn overlapping_translates() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "overlap.json", OVERLAP);
    let o = pform(&["min", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("warning: lambda = 0"));
    assert_eq!(pform(&["density", &f]).status.code(), Some(3));
    assert_eq!(pform(&["certify", &f]).status.code(), Some(3));
}

#[test]
fn density_reports() {
    let o = pform(&["density", "catalog:A:2"]);
    assert!(stdout(&o).contains("delta/vol B^d = 0.2886751346"));
    let o = pform(&["density", "catalog:Zd:3"]);
    assert!(stdout(&o).contains("delta/vol B^d = 0.1250000000"));
    let o = pform(&["--json", "density", "catalog:K12"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["delta_over_ball"].as_f64().unwrap() - 0.037037).abs() < 1e-5);
}

#[test]
fn certify_verdicts_and_exit_codes() {
    let o = pform(&["--json", "certify", "catalog:E8"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "IsolatedExtreme");
    assert_eq!(v["strong_eutaxy"]["strongly_eutactic"], true);
    assert_eq!(v["floating"]["is_floating"], false);

    let o = pform(&["--json", "--strict-exit", "certify", "catalog:FluidDiamond:1/4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "ExtremeTranslational");
    assert_eq!(v["floating"]["is_floating"], true);
    assert_eq!(v["uncertainty"]["dim"], 9);

    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "diag.json", DIAG12);
    let o = pform(&["--json", "--strict-exit", "certify", &f]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "NotExtreme");
    assert!(v["improving"].is_object());
    assert_eq!(v["eutaxy"]["status"], "Outside");
    // without the flag the verdict does not affect the exit code
    assert_eq!(pform(&["certify", &f]).status.code(), Some(0));

    assert_eq!(pform(&["--strict-exit", "certify", "catalog:Zd:2"]).status.code(), Some(4));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "bad.json", r#"{"format":"pform/1","d":2}"#);
    assert_eq!(pform(&["min", &f]).status.code(), Some(2));
    assert_eq!(pform(&["min", "catalog:Nope"]).status.code(), Some(2));
    assert_eq!(pform(&["min", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn improve_trajectories() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "diag.json", DIAG12);
    let out = dir.path().join("final.json");
    let o = pform(&["--json", "improve", &f, "--steps", "500", "-o", out.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut prev = v["initial"]["delta_over_ball"].as_f64().unwrap();
    for s in v["steps"].as_array().unwrap() {
        let d = s["delta_over_ball"].as_f64().unwrap();
        assert!(d > prev);
        prev = d;
    }
    assert!((v["final"]["delta_over_ball"].as_f64().unwrap() - 0.28867).abs() < 1e-3);
    // the written form certifies on its own
    let o = pform(&["--json", "certify", out.to_str().unwrap()]);
    let c: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(c["verdict"], v["certificate"]["verdict"]);

    let o = pform(&["--json", "improve", "catalog:E8", "--steps", "5"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["steps"].as_array().unwrap().is_empty());

    let f = write(&dir, "twofifths.json", TWO_FIFTHS);
    let o = pform(&["--json", "--seed", "7", "improve", &f, "--steps", "200"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["final"]["center_density_squared"], "1/4");
    assert_eq!(pform(&["improve", &f, "--shrink", "3/2"]).status.code(), Some(2));
}

#[test]
fn catalog_and_represent() {
    let o = pform(&["catalog", "list"]);
    for name in ["Zd", "A", "D", "E8", "K12", "Leech", "FluidDiamond"] {
        assert!(stdout(&o).lines().any(|l| l.split_whitespace().next() == Some(name)), "{name}");
    }
    let o = pform(&["catalog", "get", "A", "2"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["Q"], serde_json::json!([["2", "1"], ["1", "2"]]));
    assert_eq!(pform(&["catalog", "get", "Nope"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let z1 = dir.path().join("z1.json");
    pform(&["catalog", "get", "Zd", "1", "-o", z1.to_str().unwrap()]);
    let o = pform(&["represent", "--H", "2", z1.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((v["d"].as_u64(), v["m"].as_u64()), (Some(1), Some(2)));
    assert_eq!(v["t"], serde_json::json!([["1/2"]]));

    let o = pform(&["represent", "--H", "1 0; 0 0", "catalog:Zd:2"]);
    assert_eq!(o.status.code(), Some(2));
}
