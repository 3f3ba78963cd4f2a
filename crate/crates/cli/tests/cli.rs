use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymoment"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn weights(v: &Value) -> Vec<String> {
    v["weights"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w["weight"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn invert_example2() {
    let out = run(&[
        "invert",
        path(&data("example2_vertices.json")),
        path(&data("example2_moments.json")),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(weights(&v), ["1", "-22", "26", "15", "-16", "-2"]);
    assert_eq!(v["singular"], Value::Bool(false));
    assert!(v.get("residual").is_none());
}

#[test]
fn moments_then_invert_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.json");
    let rec = dir.path().join("r.json");
    let out = run(&[
        "moments",
        path(&data("example4_measure.json")),
        "--order",
        "2",
        "--out",
        path(&table),
    ]);
    assert_eq!(code(&out), 0);
    let out = run(&[
        "invert",
        path(&data("example4_vertices.json")),
        path(&table),
        "--out",
        path(&rec),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    // Moments of the reconstruction reproduce the input table.
    let out = run(&[
        "moments",
        path(&rec),
        "--vertices",
        path(&data("example4_vertices.json")),
        "--order",
        "2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let original: Value = serde_json::from_str(&std::fs::read_to_string(&table).unwrap()).unwrap();
    assert_eq!(json(&out), original);
}

#[test]
fn explicit_columns() {
    let out = run(&[
        "invert",
        path(&data("example3_vertices.json")),
        path(&data("example3_moments.json")),
        "--columns",
        "5,6,7,8,9,10",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(weights(&json(&out)), ["2", "0", "2", "2", "0", "2"]);
}

#[test]
fn singular_reconstruction_exits_4_with_output() {
    let dir = tempfile::tempdir().unwrap();
    let mut t: Value =
        serde_json::from_str(&std::fs::read_to_string(data("example3_moments.json")).unwrap())
            .unwrap();
    t["moments"][5]["value"] = Value::String("6".into());
    let moments = dir.path().join("m.json");
    std::fs::write(&moments, t.to_string()).unwrap();
    let out = run(&[
        "invert",
        path(&data("example3_vertices.json")),
        path(&moments),
    ]);
    assert_eq!(code(&out), 4);
    let v = json(&out);
    assert_eq!(v["singular"], Value::Bool(true));
    assert!(String::from_utf8_lossy(&out.stderr).contains("degenerate"));
}

#[test]
fn golden_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let out = run(&[
        "invert",
        path(&data("example2_vertices.json")),
        path(&data("example2_moments.json")),
        "--svg",
        path(&svg),
    ]);
    assert_eq!(code(&out), 0);
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/example2.svg");
    assert_eq!(
        std::fs::read_to_string(&svg).unwrap(),
        std::fs::read_to_string(golden).unwrap()
    );
}

#[test]
fn chambers_json() {
    let out = run(&["chambers", path(&data("example2_vertices.json"))]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["chambers"].as_array().unwrap().len(), 11);
    assert_eq!(v["hull"].as_array().unwrap().len(), 5);
}

#[test]
fn genfunc_of_triangle() {
    let out = run(&["genfunc", path(&data("example1_measure.json"))]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["denominator"].as_array().unwrap().len(), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("F(u) = 7/"));
}

#[test]
fn verify_suite() {
    let out = run(&["verify", "rebase", "--seed", "5"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("rebase: pass, 30 cases"));
    assert_eq!(code(&run(&["verify", "unknown"])), 2);
}

#[test]
fn error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"dim\": 2").unwrap();
    assert_eq!(code(&run(&["chambers", path(&bad)])), 2);

    std::fs::write(&bad, r#"{"dim": 2, "points": [[0, 0]], "extra": 1}"#).unwrap();
    assert_eq!(code(&run(&["chambers", path(&bad)])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["chambers", path(&missing)])), 3);

    // Points of the wrong length are a precondition, not a parse error.
    std::fs::write(&bad, r#"{"dim": 2, "points": [[0, 0, 1]]}"#).unwrap();
    assert_eq!(code(&run(&["chambers", path(&bad)])), 3);

    // A basis column set of the wrong size.
    let out = run(&[
        "invert",
        path(&data("example3_vertices.json")),
        path(&data("example3_moments.json")),
        "--columns",
        "1,2,3",
    ]);
    assert_eq!(code(&out), 3);

    // Too few moments for the numerator degree.
    let table = dir.path().join("t.json");
    std::fs::write(
        &table,
        r#"{"dim": 2, "order": 0, "moments": [{"index": [0, 0], "value": 1}]}"#,
    )
    .unwrap();
    let out = run(&[
        "invert",
        path(&data("example2_vertices.json")),
        path(&table),
    ]);
    assert_eq!(code(&out), 3);
    assert_eq!(code(&run(&["no-such-command"])), 2);
}
