use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qutrit-witness"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn data_rows(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect()
}

#[test]
fn classify_choi_point() {
    let out = run(&["classify", "1", "1", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_witness"], true);
    assert_eq!(v["indecomposable"], true);
    assert_eq!(v["meta"]["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["meta"]["command"], "classify 1 1 0");
}

#[test]
fn invalid_input_exits_2() {
    let out = run(&["classify", "1", "-0.5", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(run(&["span", "0.5", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--grid", "1"]).status.code(), Some(2));
    assert_eq!(run(&["ellipse", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn degenerate_point_exits_3_without_fallback() {
    let third = (1.0f64 / 3.0).to_string();
    let out = run(&["span", &third, &third]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&[
        "span",
        &third,
        &third,
        "--numeric-fallback",
        "--starts",
        "24",
        "--seed",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["degenerate"], true);
    assert_eq!(v["meta"]["seed"], 5);
}

#[test]
fn span_points() {
    for (b, c, rank) in [
        ("1", "1", 9),
        ("0", "1", 7),
        ("1", "0", 7),
        ("0.19098", "1.30902", 9),
    ] {
        let v = json(&run(&["span", b, c]));
        assert_eq!(v["gram_rank"], rank, "({b}, {c})");
    }
}

#[test]
fn outputs_to_file_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ellipse.csv");
    let mut texts = Vec::new();
    for _ in 0..2 {
        let st = Command::new(env!("CARGO_BIN_EXE_qutrit-witness"))
            .args([
                "ellipse",
                "--samples",
                "6",
                "--starts",
                "16",
                "--seed",
                "9",
                "--output",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(st.success());
        texts.push(std::fs::read_to_string(&path).unwrap());
        std::fs::remove_file(&path).unwrap();
    }
    let ta = &texts[0];
    assert_eq!(ta, &texts[1]);
    assert!(ta.starts_with("# version: "));
    assert!(ta.contains("# seed: 9\n"));
    assert_eq!(data_rows(ta).len(), 17);
}

#[test]
fn scan_json_and_csv_agree() {
    let csv = String::from_utf8(run(&["scan", "--grid", "4"]).stdout).unwrap();
    let v = json(&run(&["scan", "--grid", "4", "--format", "json"]));
    let rows = v["rows"].as_array().unwrap();
    let csv_rows = data_rows(&csv);
    assert_eq!(rows.len(), 16);
    assert_eq!(csv_rows.len(), 16);
    for (r, line) in rows.iter().zip(csv_rows) {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(r["b"], fields[0]);
        assert_eq!(r["is_witness"], fields[3]);
    }
}

#[test]
fn minimize_identity_free_point() {
    let v = json(&run(&[
        "minimize", "1", "1", "0", "--starts", "16", "--seed", "2",
    ]));
    assert!(v["min_value"].as_f64().unwrap().abs() <= 1e-7);
    assert_eq!(v["x"].as_array().unwrap().len(), 3);
}

#[test]
fn verify_quick_reports_every_claim() {
    let out = run(&["verify", "--quick", "--seed", "3"]);
    let v = json(&out);
    let claims = v["claims"].as_array().unwrap();
    assert_eq!(claims.len(), 10);
    let failed = claims.iter().any(|c| c["status"] == "fail");
    assert_eq!(v["overall"] == "fail", failed);
    assert_eq!(out.status.code(), Some(if failed { 1 } else { 0 }));
    assert_eq!(claims[8]["status"], "degenerate");
}
