//! End-to-end checks of the binary surface: JSON schemas, exit codes, and
//! byte-level determinism of reports.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qindex"))
}

fn tmp(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qindex-test-{}-{}", std::process::id(), name));
    p
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = tmp(name);
    std::fs::write(&p, text).unwrap();
    p
}

const LINE_CURVE: &str = r#"{
  "x": {"num": ["0", "1"], "den": ["1"]},
  "y": {"num": ["1", "-1"], "den": ["1"]},
  "orientation": 1
}"#;

#[test]
fn polygon_report() {
    let poly = write("d2.json", r#"{"vertices": [[0,0],[2,0],[0,2]]}"#);
    let out = tmp("d2-report.json");
    let status = bin()
        .args(["polygon", "--polygon"])
        .arg(&poly)
        .arg("--json-out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["m"], 6);
    assert_eq!(v["result"]["g"], 0);
    assert_eq!(v["result"]["double_area"], 4);
    assert!(v["inputs"].as_object().unwrap().len() == 1);
}

#[test]
fn nonconvex_polygon_is_input_error() {
    let poly = write(
        "bad.json",
        r#"{"vertices": [[0,0],[2,0],[1,1],[2,2],[0,2]]}"#,
    );
    let status = bin().args(["polygon", "--polygon"]).arg(&poly).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn bg_deterministic_and_counts_the_conic() {
    let poly = write("d2b.json", r#"{"vertices": [[0,0],[2,0],[0,2]]}"#);
    let (o1, o2) = (tmp("bg1.json"), tmp("bg2.json"));
    for o in [&o1, &o2] {
        let status = bin()
            .args(["bg", "--seed", "7", "--polygon"])
            .arg(&poly)
            .arg("--json-out")
            .arg(o)
            .status()
            .unwrap();
        assert!(status.success());
    }
    let b1 = std::fs::read(&o1).unwrap();
    let b2 = std::fs::read(&o2).unwrap();
    assert_eq!(b1, b2, "reports must be byte-identical for a fixed seed");
    let v: serde_json::Value = serde_json::from_slice(&b1).unwrap();
    assert_eq!(v["result"]["bg_at_one"], "1");
}

#[test]
fn identity_holds_for_unit_square() {
    let poly = write("sq.json", r#"{"vertices": [[0,0],[1,0],[1,1],[0,1]]}"#);
    let out = tmp("identity.json");
    let status = bin()
        .args(["identity", "--seed", "3", "--polygon"])
        .arg(&poly)
        .arg("--json-out")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success(), "identity must hold (exit 0)");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["identity_holds"], true);
}

#[test]
fn qindex_line_both_methods_agree() {
    let curve = write("line.json", LINE_CURVE);
    let out = tmp("line-q.json");
    let status = bin()
        .args(["qindex", "--curve"])
        .arg(&curve)
        .args(["--method", "both", "--json-out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["result"]["k_diagram"], "1/2");
    assert_eq!(v["result"]["k_numeric"], "1/2");
    assert_eq!(v["result"]["agree"], true);
    assert_eq!(v["result"]["diagram"]["area"], "1/2");
}

#[test]
fn qindex_circle_diagram_is_input_error() {
    // A circle meets the infinite axis in conjugate points: no index diagram.
    let curve = write(
        "circle.json",
        r#"{
  "x": {"num": ["3", "0", "-1"], "den": ["1", "0", "1"]},
  "y": {"num": ["1", "4", "1"], "den": ["1", "0", "1"]}
}"#,
    );
    let status = bin()
        .args(["qindex", "--curve"])
        .arg(&curve)
        .args(["--method", "diagram"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn plot_emits_svg() {
    let curve = write("line2.json", LINE_CURVE);
    let svg = tmp("line.svg");
    let status = bin()
        .args(["plot", "--curve"])
        .arg(&curve)
        .arg("--svg")
        .arg(&svg)
        .status()
        .unwrap();
    assert!(status.success());
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"));
    assert!(body.trim_end().ends_with("</svg>"));
    // The line has three real arcs, one polyline each.
    assert_eq!(body.matches("<polyline").count(), 3);
}
