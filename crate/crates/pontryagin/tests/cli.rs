//! Exercises the binary end to end: exit codes, determinism, letter-order
//! overrides, and parse failure modes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pontryagin"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/data").join(name)
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("pontryagin-cli-{name}"));
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn validate_accepts_x3() {
    let out = run(&["validate", data("x3.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("valid, r=3, hyperbolic"), "{stdout}");
}

#[test]
fn validate_rejects_hypothesis_violation_with_exit_1() {
    let path = write_temp(
        "bad-dim.json",
        r#"{"name":"bad","n":2,"d":5,"generator_degrees":[2,2,2],
            "pairing":[[1,0,0],[0,1,0],[0,0,1]]}"#,
    );
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("hypothesis"), "{stderr}");
}

#[test]
fn validate_lists_all_violations() {
    let path = write_temp(
        "multi-bad.json",
        r#"{"name":"bad","n":2,"d":5,"generator_degrees":[1,2],
            "pairing":[[1,0],[0,1]]}"#,
    );
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    // not fail-fast: hypothesis + degree range + pairing degree all listed
    assert!(stderr.matches('\n').count() >= 3, "{stderr}");
}

#[test]
fn malformed_rational_exits_2() {
    let path = write_temp(
        "zero-den.json",
        r#"{"name":"bad","n":3,"d":7,"generator_degrees":[3,4],
            "pairing":[[0,"1/0"],["1/0",0]]}"#,
    );
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn malformed_json_exits_2() {
    let path = write_temp("not-json.json", "{ this is not json");
    let out = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    let out = run(&["validate", "/nonexistent/definitely.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_is_byte_identical_across_runs() {
    let path = data("y2.json");
    let args = ["report", path.to_str().unwrap(), "--max-degree", "6", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(text["validation"]["r"], 4);
    assert_eq!(text["hilbert"]["agreement"], true);
    assert_eq!(text["lie_dims"], serde_json::json!([0, 2, 2, 1, 3, 3]));
    assert_eq!(text["decomposition"]["summands"]["7"]["multiplicity"], 3);
}

#[test]
fn report_text_and_json_formats() {
    let path = data("x3.json");
    let json = run(&["report", path.to_str().unwrap(), "--max-degree", "5", "--format", "json"]);
    let text = run(&["report", path.to_str().unwrap(), "--max-degree", "5", "--format", "text"]);
    assert_eq!(json.status.code(), Some(0));
    assert_eq!(text.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(doc["lie_dims"], serde_json::json!([3, 2, 5, 10, 24]));
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("rationally hyperbolic"), "{text}");
}

#[test]
fn report_on_low_rank_emits_classification_only() {
    let out = run(&["report", data("s3xs4.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classification"]["display"], "S^3 x S^4");
    assert!(doc["presentation"].is_null());
    assert!(doc["decomposition"].is_null());
}

#[test]
fn seed_order_changes_presentation_not_decomposition() {
    let path = data("y2.json");
    let base = run(&["report", path.to_str().unwrap(), "--max-degree", "6", "--format", "json"]);
    let seeded = run(&[
        "report",
        path.to_str().unwrap(),
        "--max-degree",
        "6",
        "--format",
        "json",
        "--seed-order",
        "2,1,4,3",
    ]);
    assert_eq!(base.status.code(), Some(0));
    assert_eq!(seeded.status.code(), Some(0));
    let a: serde_json::Value = serde_json::from_slice(&base.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&seeded.stdout).unwrap();
    assert_ne!(a["presentation"]["letter_order"], b["presentation"]["letter_order"]);
    // the decomposition content is basis-independent
    let mults = |d: &serde_json::Value| {
        d["decomposition"]["summands"]
            .as_object()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v["multiplicity"].as_u64().unwrap()))
            .collect::<Vec<_>>()
    };
    assert_eq!(mults(&a), mults(&b));
    assert_eq!(a["hilbert"], b["hilbert"]);
}

#[test]
fn invalid_seed_order_is_rejected() {
    let out = run(&[
        "report",
        data("y2.json").to_str().unwrap(),
        "--seed-order",
        "1,1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lie_basis_lists_entries() {
    let out = run(&["lie-basis", data("y2.json").to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // u1..u4 in degrees 2 and 3, then [u1,u2] in degree 4
    assert_eq!(stdout.lines().count(), 6, "{stdout}");
    assert!(stdout.contains("[u1,u2]"), "{stdout}");
    assert!(stdout.contains("S^5"), "{stdout}");
}

#[test]
fn lie_basis_x3_low_degrees() {
    let out = run(&["lie-basis", data("x3.json").to_str().unwrap(), "--max-degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    // 3 degree-1 rows plus 2 degree-2 rows plus the header
    assert_eq!(stdout.lines().count(), 6, "{stdout}");
}

#[test]
fn report_x3_default_depth() {
    // the default truncation exercises the witness and oracle budgets:
    // deep degrees keep the series route only, agreement still holds
    let out = run(&["report", data("x3.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["hilbert"]["agreement"], true);
    assert_eq!(
        doc["lie_dims"],
        serde_json::json!([3, 2, 5, 10, 24, 50, 120, 270, 640, 1500, 3600, 8610])
    );
    let entries = doc["hilbert"]["entries"].as_array().unwrap();
    // a_m = 3 a_{m-1} - a_{m-2} reaches 121393 at degree 12
    assert_eq!(entries[12]["dim"], serde_json::json!(121393));
    // degree 12 word space exceeds the enumeration guard; series route only
    assert!(entries[12]["avoiding_words"].is_null());
    assert_eq!(entries[8]["oracle"], serde_json::json!(2584));
}

#[test]
fn lie_basis_zero_degree_is_empty_table() {
    let out = run(&["lie-basis", data("x3.json").to_str().unwrap(), "--max-degree", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 1, "{stdout}"); // header only
}

#[test]
fn lie_basis_refuses_low_rank_with_explanation() {
    let out = run(&["lie-basis", data("james.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("classify"), "{stderr}");
}

#[test]
fn classify_low_rank_types() {
    for (file, expect) in [
        ("sphere.json", "S^4"),
        ("james.json", "J_2 S^2"),
        ("s3xs4.json", "S^3 x S^4"),
    ] {
        let out = run(&["classify", data(file).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{file}");
        let stdout = String::from_utf8(out.stdout).unwrap();
        assert!(stdout.contains(expect), "{file}: {stdout}");
    }
}

#[test]
fn classify_hyperbolic() {
    let out = run(&["classify", data("x3.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["kind"], "hyperbolic");
    assert_eq!(doc["r"], 3);
}
