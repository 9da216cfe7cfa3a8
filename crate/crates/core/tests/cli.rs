use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superint"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin().args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const E1_PAIR: &str =
    r#"[{"A_zz":"1","b_z":"0","c":"0","b_w":"0","A_ww":"1"},{"A_zz":"0","b_z":"0","c":"1","b_w":"0","A_ww":"0"}]"#;

#[test]
fn wedge_of_e1_pair() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.json", E1_PAIR);
    let o = run(&["wedge", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Vec<String> = serde_json::from_str(&stdout(&o)).unwrap();
    // a30, a20, a10, a00, a21, a11, a01, a12, a02, a03
    assert_eq!(v[1], "1");
    assert_eq!(v[8], "-1");
    assert!(v.iter().enumerate().all(|(i, c)| i == 1 || i == 8 || c == "0"));
}

#[test]
fn wedge_errors() {
    let dir = tempfile::tempdir().unwrap();
    let t = r#"{"A_zz":"1","b_z":"2","c":"0","b_w":"0","A_ww":"1"}"#;
    let f = write(&dir, "dep.json", &format!("[{t},{t}]"));
    let o = run(&["wedge", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("dependent pair"));

    let f = write(&dir, "bad.json", &format!(r#"[{{"A_zz":"3/0","b_z":"0","c":"0","b_w":"0","A_ww":"1"}},{t}]"#));
    assert_eq!(run(&["wedge", &f]).status.code(), Some(1));
}

#[test]
fn classify_e16_with_svg() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "e16.json", r#"{"point":["0","0","0","0","1","0","0","1","0","0"]}"#);
    let svg = dir.path().join("e16.svg");
    let o = run(&["classify", &f, "--normal-form", "--fibre-check", "6", "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["label"], "(1,1,1)");
    assert_eq!(r["e_label"], "E16");
    assert_eq!(r["factors"].as_array().unwrap().len(), 3);
    assert_eq!(r["fibre"]["rank"], 4);
    assert_eq!(r["fibre"]["consistent"], true);
    let drawing = std::fs::read_to_string(svg).unwrap();
    assert_eq!(drawing.matches(r#"<g class="line""#).count(), 3);
}

#[test]
fn classify_off_variety_exits_3_with_report() {
    let dir = tempfile::tempdir().unwrap();
    // D = z + w, A_z = B_w = 1
    let f = write(&dir, "off.json", r#"["1","0","1","0","0","0","1","0","0","1"]"#);
    let o = run(&["classify", &f]);
    assert_eq!(o.status.code(), Some(3));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["sic"]["on_variety"], false);
    assert!(r["sic"]["residuals"].as_object().unwrap().values().any(|v| v == "2"));

    let o = run(&["classify", &f, "--format", "text"]);
    assert!(stdout(&o).contains(": 2"));
}

#[test]
fn classify_degenerate_point_draws_no_lines() {
    let dir = tempfile::tempdir().unwrap();
    // D = 0, A_z = 1, B_w = 0
    let f = write(&dir, "deg.json", r#"["1","0","0","0","0","0","0","0","0","0"]"#);
    let svg = dir.path().join("deg.svg");
    let o = run(&["classify", &f, "--svg", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["sic"]["degenerate"], true);
    let drawing = std::fs::read_to_string(svg).unwrap();
    assert_eq!(drawing.matches("<line ").count(), 0);
    assert!(drawing.contains("no lines"));
}

#[test]
fn enumerate_stream() {
    let o = run(&["enumerate", "--class", "(0,11,0)", "--samples", "5", "--seed", "3"]);
    assert!(o.status.success());
    let lines: Vec<Vec<String>> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 5);
    for p in &lines {
        // a21, a11, a12 vanish on this component
        assert_eq!((p[4].as_str(), p[5].as_str(), p[7].as_str()), ("0", "0", "0"));
    }
    assert!(stderr(&o).contains("seed: 3"));

    let o = run(&["enumerate", "--class", "(0,11,0)", "--samples", "0"]);
    assert!(o.status.success());
    assert!(stdout(&o).trim().is_empty());

    assert_eq!(run(&["enumerate", "--class", "(9,9,9)"]).status.code(), Some(1));
}

#[test]
fn enumerate_then_classify_round_trip() {
    for class in ["(1,1,1)", "(0,11,0)", "(11,0,1)", "(0,1,0)"] {
        let o = run(&["enumerate", "--class", class, "--samples", "4", "--seed", "11"]);
        let c = run_stdin(&["classify", "-"], &stdout(&o));
        assert!(c.status.success(), "{class}: {}", stderr(&c));
        let reports: Vec<Value> =
            serde_json::Deserializer::from_str(&stdout(&c)).into_iter::<Value>().map(|r| r.unwrap()).collect();
        assert_eq!(reports.len(), 4);
        for r in reports {
            assert_eq!(r["label"], class);
        }
    }
}

#[test]
fn fibre_and_poisson_checks() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "pair.json", E1_PAIR);
    let o = run(&["fibre-check", &f, "--base", "1,2", "--potential", "(prod z w)", "--potential", "(pow z 2)"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["rank"], 4);
    assert_eq!(r["consistent"], true);
    assert_eq!(r["potentials"][0]["passes"], true);
    assert_eq!(r["potentials"][1]["passes"], false);

    let o = run(&["poisson-check", &f, "--potential", "(prod z w)", "--samples", "20"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let o = run(&["poisson-check", &f, "--potential", "(pow z 2)", "--samples", "5"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn normal_form_of_e16() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir, "e16.json", r#"["0","0","0","0","1","0","0","1","0","0"]"#);
    let o = run(&["normal-form", &f]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("E16"));
}

#[test]
fn tables_audit_flags_deviations() {
    let o = run(&["tables-audit", "--format", "text", "--samples", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let deviations: Vec<&str> = out.lines().filter(|l| l.contains("DEVIATION")).collect();
    assert_eq!(deviations.len(), 2, "{out}");
    assert!(deviations.iter().any(|l| l.contains("E2")));
    assert!(deviations.iter().any(|l| l.contains("x^2 + 4y^2")));
    assert!(out.contains("shear"));
}
