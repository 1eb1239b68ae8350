use std::process::{Command, Output};

use serde_json::Value;

fn hopfcheck(args: &[&str], seed_env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hopfcheck"));
    cmd.args(args).env_remove("HOPFCHECK_SEED");
    if let Some(s) = seed_env {
        cmd.env("HOPFCHECK_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn octonion_laws_pass_with_the_expected_failure() {
    let out = hopfcheck(&["laws", "--level", "3", "--samples", "200"], None);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc = json(&out);
    assert_eq!(doc["overall"], "pass");
    let assoc = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["law"] == "associativity")
        .unwrap();
    assert_eq!(assoc["status"], "fails");
    assert_eq!(assoc["expected"], true);
    assert!(assoc["witness"]["inputs"].is_array());
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["laws", "--bogus"][..],
        &["nosuch"],
        &["hspace", "--instance", "s15"],
        &["spheroid", "--level", "9"],
        &["laws", "--samples", "0"],
        &["laws", "--mode", "fuzzy"],
        &["laws", "--tolerance", "-1"],
        &["imaginaroid", "--instance", "s2", "--level", "1"],
    ] {
        let out = hopfcheck(args, None);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn help_and_version_exit_with_zero() {
    for args in [&["--help"][..], &["--version"], &["diamond", "--help"]] {
        assert_eq!(hopfcheck(args, None).status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("report.json");
    let out = hopfcheck(
        &[
            "zerodiv",
            "--level",
            "2",
            "--output",
            path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn seed_environment_overrides_the_flag() {
    let args = [
        "spheroid",
        "--instance",
        "s1",
        "--samples",
        "50",
        "--seed",
        "5",
    ];
    let flagged = json(&hopfcheck(&args, None));
    assert_eq!(flagged["config"]["seed"], 5);
    let env = json(&hopfcheck(&args, Some("77")));
    assert_eq!(env["config"]["seed"], 77);
    assert!(env["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["seed"] == 77));

    let bad = hopfcheck(&args, Some("many"));
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn writes_csv_and_json_files() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("fiber.csv");
    let out = hopfcheck(
        &[
            "fiber",
            "--instance",
            "complex",
            "--samples",
            "100",
            "--format",
            "csv",
            "--output",
            csv_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut reader = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(reader.headers().unwrap().len(), 10);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);
    assert!(rows
        .iter()
        .all(|r| &r[1] == "hopf-complex" && &r[8] == "true"));

    let json_path = dir.path().join("fiber.json");
    let out = hopfcheck(
        &[
            "fiber",
            "--instance",
            "complex",
            "--samples",
            "100",
            "--output",
            json_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_slice(&std::fs::read(&json_path).unwrap()).unwrap();
    assert_eq!(doc["reports"].as_array().unwrap().len(), 6);
    assert_eq!(doc["config"]["instance"], "complex");
}

#[test]
fn float_mode_echoes_the_tolerance() {
    let doc = json(&hopfcheck(
        &[
            "diamond",
            "--instance",
            "s1",
            "--mode",
            "float",
            "--samples",
            "5",
            "--grid",
            "8",
            "--tolerance",
            "1e-10",
        ],
        None,
    ));
    assert_eq!(doc["config"]["tolerance"], 1e-10);
    assert_eq!(doc["config"]["grid"], 8);
    assert_eq!(doc["overall"], "pass");
}

#[test]
fn text_format_ends_with_a_summary() {
    let out = hopfcheck(&["zerodiv", "--level", "4", "--format", "text"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("no-zero-divisors"));
    assert!(text
        .trim_end()
        .lines()
        .last()
        .unwrap()
        .starts_with("pass: 1 reports"));
}

#[test]
fn octonion_sphere_matches_the_algebra_in_floats() {
    let out = hopfcheck(
        &[
            "hspace",
            "--instance",
            "s7",
            "--samples",
            "100000",
            "--seed",
            "42",
            "--mode",
            "float",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let oracle = doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["law"] == "oracle-equivalence")
        .unwrap();
    assert!(oracle["max_residual"].as_f64().unwrap() < 1e-9);
    assert!(oracle["samples"].as_u64().unwrap() >= 100_000);
}

#[test]
fn quaternionic_fibers_hold_exactly() {
    let out = hopfcheck(
        &[
            "fiber",
            "--instance",
            "quaternionic",
            "--mode",
            "exact",
            "--samples",
            "1000",
        ],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert!(doc["reports"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["status"] == "holds-exact"));
}
