//! Golden-file tests for every subcommand. `UPDATE_GOLDEN=1` rewrites them.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_proxcell"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn check_golden(name: &str, actual: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(actual, expected, "output differs from {}", path.display());
}

fn success(name: &str, args: &[&str]) -> String {
    let out = run(args);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(0), "{args:?} failed: {stderr}");
    let stdout = String::from_utf8(out.stdout).unwrap();
    check_golden(name, &stdout);
    stdout
}

fn domain_error(args: &[&str], kind: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(1), "{args:?}");
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).expect("JSON error on stderr");
    assert_eq!(err["error"], kind, "{err}");
    assert!(err["message"].is_string());
}

fn usage_error(args: &[&str]) {
    assert_eq!(run(args).status.code(), Some(2), "{args:?}");
}

#[test]
fn validate() {
    let out = success(
        "validate_hexfan.json",
        &["validate", &data("fixture_hexfan.json")],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], true);
}

#[test]
fn validate_rejects_bad_input() {
    domain_error(&["validate", &data("two_points.csv")], "ParseError");
    domain_error(&["validate", &data("missing.json")], "IoError");
}

#[test]
fn triangulate() {
    let out = success(
        "triangulate_points.json",
        &["triangulate", &data("points.csv")],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    // 6 points, 4 on the hull: 2(n-1)-h triangles.
    assert_eq!(v["triangles"].as_array().unwrap().len(), 6);
    domain_error(&["triangulate", &data("two_points.csv")], "TooFewKeypoints");
}

#[test]
fn triangulate_random_uses_seed() {
    let a = success(
        "triangulate_random.json",
        &["--seed", "7", "triangulate", "--random", "20"],
    );
    let b = run(&["triangulate", "--random", "20", "--seed", "8"]);
    assert_ne!(a.as_bytes(), &b.stdout[..]);
    usage_error(&["triangulate"]);
    usage_error(&["chain-check"]);
}

#[test]
fn holes() {
    let out = success(
        "holes_three_blob.json",
        &[
            "holes",
            &data("three_blob.pgm"),
            "--tolerance",
            "10",
            "--min-area",
            "4",
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["holes"].as_array().unwrap().len(), 4);
    usage_error(&["holes", &data("three_blob.pgm"), "--connectivity", "6"]);
    domain_error(&["holes", &data("points.csv")], "UnsupportedFormat");
}

#[test]
fn mnc() {
    success("mnc_hexfan.json", &["mnc", &data("fixture_hexfan.json")]);
}

#[test]
fn skcx() {
    let out = success(
        "skcx_hexfan_k2.json",
        &[
            "skcx",
            "--nucleus",
            "0",
            "--k",
            "2",
            &data("fixture_hexfan.json"),
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["rings"][0]["triangles"].as_array().unwrap().len(), 0);
    let out = success(
        "skcx_two_ring_k2.json",
        &[
            "skcx",
            "--nucleus",
            "0",
            "--k",
            "2",
            &data("fixture_two_ring.json"),
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cycles"][0]["points"].as_array().unwrap().len(), 12);
    let shell = run(&[
        "skcx",
        "--nucleus",
        "0",
        "--k",
        "1",
        "--ring-index",
        "shell",
        &data("fixture_two_ring.json"),
    ]);
    assert_eq!(String::from_utf8(shell.stdout).unwrap(), out);
    success(
        "skcx_two_ring_all.json",
        &[
            "skcx",
            "--nucleus",
            "0",
            "--k",
            "3",
            "--all",
            &data("fixture_two_ring.json"),
        ],
    );
    domain_error(
        &[
            "skcx",
            "--nucleus",
            "99",
            "--k",
            "1",
            &data("fixture_hexfan.json"),
        ],
        "UnknownVertex",
    );
}

#[test]
fn sew() {
    let out = success(
        "sew_hexfan.json",
        &[
            "sew",
            "--from",
            "0.4,0.1",
            "--to",
            "-0.4,-0.1",
            &data("fixture_hexfan.json"),
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dualPath"].as_array().unwrap().len(), 4);
    domain_error(
        &[
            "sew",
            "--from",
            "5,5",
            "--to",
            "0.1,0.1",
            &data("fixture_hexfan.json"),
        ],
        "PointOutsideComplex",
    );
    usage_error(&[
        "sew",
        "--from",
        "nope",
        "--to",
        "0,0",
        &data("fixture_hexfan.json"),
    ]);
}

#[test]
fn cycle() {
    let out = success(
        "cycle_hexfan.json",
        &[
            "cycle",
            "--points",
            "0.5,0.3;-0.5,0.3;0,-0.5",
            &data("fixture_hexfan.json"),
        ],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isLink"], true);
    domain_error(
        &[
            "cycle",
            "--points",
            "0.5,0.3;-0.5,0.3",
            &data("fixture_hexfan.json"),
        ],
        "TooFewPoints",
    );
}

#[test]
fn chain_check() {
    let out = success(
        "chain_check_glued.json",
        &["chain-check", "--n", "10", "--eta", "1/100", "--glue"],
    );
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["isChain"], true);
    assert_eq!(v["glued"]["isChain"], false);
    assert_eq!(v["glued"]["isLink"], true);
    success(
        "chain_check_family.json",
        &["chain-check", &data("family.json")],
    );
    success(
        "chain_check_cells.json",
        &[
            "chain-check",
            &data("cell_family.json"),
            "--complex",
            &data("fixture_hexfan.json"),
        ],
    );
    domain_error(
        &["chain-check", "--n", "10", "--eta", "1/10"],
        "EtaOutOfRange",
    );
    domain_error(
        &["chain-check", &data("cell_family.json")],
        "MissingComplex",
    );
}

#[test]
fn render() {
    let svg = success(
        "render_hexfan.svg",
        &[
            "render",
            &data("fixture_hexfan.json"),
            "--spec",
            &data("render_spec.json"),
        ],
    );
    assert_eq!(svg.matches("<line ").count(), 12);
    assert_eq!(svg.matches("<polygon ").count(), 1);
    success(
        "render_default.svg",
        &["render", &data("fixture_two_ring.json")],
    );
    domain_error(
        &[
            "render",
            &data("fixture_hexfan.json"),
            "--spec",
            &data("bad_spec.json"),
        ],
        "UnknownReference",
    );
}

#[test]
fn output_is_written_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.svg");
    let out = run(&[
        "--output",
        target.to_str().unwrap(),
        "render",
        &data("fixture_hexfan.json"),
        "--spec",
        &data("render_spec.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&target).unwrap();
    assert_eq!(
        written,
        std::fs::read_to_string(golden("render_hexfan.svg")).unwrap()
    );
    // Only the target remains; no temporary files linger.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn usage_errors() {
    usage_error(&[]);
    usage_error(&["frobnicate"]);
    usage_error(&["skcx", &data("fixture_hexfan.json")]);
}
