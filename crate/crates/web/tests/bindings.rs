use serde_json::Value;
use superint_web::{check_potential, classify_json, wedge_json};

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

const T1: &str = r#"{"A_zz":"1","b_z":"0","c":"0","b_w":"0","A_ww":"1"}"#;
const T2: &str = r#"{"A_zz":"0","b_z":"0","c":"1","b_w":"0","A_ww":"0"}"#;

#[test]
fn wedge_gives_e1() {
    let v = parse(&wedge_json(T1, T2));
    assert_eq!(v["D"], "z^2 - w^2");
    let v = parse(&wedge_json(T1, T1));
    assert!(v["error"].as_str().unwrap().contains("dependent pair"));
}

#[test]
fn classify_pair_and_point() {
    let v = parse(&classify_json(&format!("[{T1},{T2}]"), false));
    assert_eq!(v["report"]["e_label"], "E1");
    assert_eq!(v["svg"].as_str().unwrap().matches("<g class=\"line\"").count(), 2);
    let v = parse(&classify_json(r#"["1","0","1","0","0","0","1","0","0","1"]"#, true));
    assert_eq!(v["report"]["sic"]["on_variety"], false);
    assert!(parse(&classify_json("[1,2", false))["error"].is_string());
}

#[test]
fn potentials() {
    let e1 = r#"["0","1","0","0","0","0","0","0","-1","0"]"#;
    assert_eq!(parse(&check_potential(e1, "(prod z w)", 1))["in_fibre"], true);
    assert_eq!(parse(&check_potential(e1, "(pow x -2)", 1))["in_fibre"], true);
    assert_eq!(parse(&check_potential(e1, "(pow z 2)", 1))["in_fibre"], false);
}
