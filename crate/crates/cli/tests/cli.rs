//! End-to-end tests of the binary: command examples, the cover-file round
//! trip, exit codes and report determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_equichar"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn write_cover_241() -> PathBuf {
    let dir = tempfile::tempdir().expect("tempdir").keep();
    let path = dir.join("cover241.json");
    let text = r#"{
        "group_order": 5,
        "residue_prime": 241,
        "components": [
            {"id": "y0", "e": 5, "m": 1, "self_intersection": -20, "chi_struct": 1},
            {"id": "yinf", "e": 1, "m": 0, "self_intersection": -20, "chi_struct": 1}
        ],
        "intersections": [["y0", "yinf", 20]]
    }"#;
    std::fs::write(&path, text).expect("write cover");
    path
}

fn coefficient<'a>(report: &'a Value, id: &str) -> (&'a str, &'a str) {
    let coeffs = report["results"]["coefficients"]
        .as_array()
        .expect("coefficient rows");
    for row in coeffs {
        if row[0] == id {
            return (row[1].as_str().unwrap(), row[2].as_str().unwrap());
        }
    }
    panic!("no coefficient for {id}");
}

#[test]
fn resolvent_structure_example() {
    let cover = write_cover_241();
    let out = run(&[
        "resolvent",
        cover.to_str().unwrap(),
        "--sheaf",
        "structure",
        "--character",
        "2",
    ]);
    let report = stdout_json(&out);
    assert_eq!(coefficient(&report, "y0"), ("2", "5"));
    assert_eq!(coefficient(&report, "yinf"), ("0", "1"));
    assert_eq!(report["results"]["support"], serde_json::json!(["y0"]));
    assert!(String::from_utf8_lossy(&out.stderr).contains("y0: 2/5"));
}

#[test]
fn resolvent_trivial_character_is_zero() {
    let cover = write_cover_241();
    let out = run(&[
        "resolvent",
        cover.to_str().unwrap(),
        "--sheaf",
        "canonical",
        "--character",
        "0",
    ]);
    let report = stdout_json(&out);
    assert_eq!(coefficient(&report, "y0"), ("0", "1"));
    assert_eq!(coefficient(&report, "yinf"), ("0", "1"));
    assert_eq!(report["results"]["support"], serde_json::json!([]));
}

#[test]
fn resolvent_half_canonical_example() {
    let cover = write_cover_241();
    let out = run(&[
        "resolvent",
        cover.to_str().unwrap(),
        "--sheaf",
        "canonical-half",
        "--character",
        "4",
    ]);
    let report = stdout_json(&out);
    assert_eq!(coefficient(&report, "y0"), ("-1", "5"));
}

#[test]
fn resolvent_raw_exponents() {
    let cover = write_cover_241();
    let out = run(&[
        "resolvent",
        cover.to_str().unwrap(),
        "--raw-exponents",
        "y0=3",
    ]);
    let report = stdout_json(&out);
    assert_eq!(coefficient(&report, "y0"), ("3", "5"));
}

#[test]
fn invariants_canonical_deltas() {
    let cover = write_cover_241();
    let out = run(&[
        "invariants",
        cover.to_str().unwrap(),
        "--sheaf",
        "canonical",
        "--all-characters",
    ]);
    let report = stdout_json(&out);
    let rows = report["results"]["rows"].as_array().unwrap();
    let deltas: Vec<&str> = rows
        .iter()
        .map(|r| r["euler_delta"].as_str().unwrap())
        .collect();
    assert_eq!(deltas, vec!["-30", "-22", "-14", "-6"]);
    assert_eq!(report["results"]["integrality_failures"], 0);
}

#[test]
fn invariants_structure_deltas_vanish() {
    let cover = write_cover_241();
    let out = run(&[
        "invariants",
        cover.to_str().unwrap(),
        "--sheaf",
        "structure",
    ]);
    let report = stdout_json(&out);
    for row in report["results"]["rows"].as_array().unwrap() {
        assert_eq!(row["euler_delta"], "0");
        assert_eq!(row["twisted_delta"], "0");
    }
}

#[test]
fn invariants_single_raw_character() {
    let cover = write_cover_241();
    let out = run(&[
        "invariants",
        cover.to_str().unwrap(),
        "--sheaf",
        "canonical",
        "--raw-exponents",
        "y0=1",
    ]);
    let report = stdout_json(&out);
    let rows = report["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0]["euler_delta"], "-30");
    assert_eq!(rows[0]["a_invariant"], "-38");
}

#[test]
fn invariants_flag_integrality_failures() {
    let dir = tempfile::tempdir().expect("tempdir").keep();
    let path = dir.join("bad.json");
    // l does not divide y0.yinf: the deltas cannot be integral
    std::fs::write(
        &path,
        r#"{
            "group_order": 5,
            "residue_prime": 7,
            "components": [
                {"id": "y0", "e": 5, "m": 1, "self_intersection": -3, "chi_struct": 1},
                {"id": "yinf", "e": 1, "m": 0, "self_intersection": -3, "chi_struct": 1}
            ],
            "intersections": [["y0", "yinf", 3]]
        }"#,
    )
    .unwrap();
    let out = run(&["invariants", path.to_str().unwrap(), "--sheaf", "canonical"]);
    assert_eq!(out.status.code(), Some(2));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report["results"]["integrality_failures"].as_u64().unwrap() > 0);
}

#[test]
fn verify_commands_pass() {
    for args in [
        vec!["verify", "--lemma-6-3", "--l-range", "5..40"],
        vec![
            "verify",
            "--corollary-3-8",
            "--random",
            "50",
            "--seed",
            "42",
        ],
        vec!["verify", "--eq-5-3", "3", "2", "1", "1"],
    ] {
        let out = run(&args);
        let report = stdout_json(&out);
        assert_eq!(report["verdicts"]["passed"], true, "{args:?}");
    }
}

#[test]
fn verify_needs_exactly_one_suite() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["verify", "--lemma-6-3", "--corollary-3-8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn modular_small_field_reports_trivial_verdicts() {
    let out = run(&["modular", "--p", "241", "--l", "5"]);
    let report = stdout_json(&out);
    assert_eq!(report["verdicts"]["v"], "trivial");
    assert_eq!(report["verdicts"]["half_canonical"], "trivial");
    assert_eq!(report["verdicts"]["structure"], "trivial");
    assert_eq!(
        report["results"]["norm"]["class_group"]["wide_class_number"],
        1
    );
    assert_eq!(report["results"]["exponents"]["raw_matches_closed"], true);
}

#[test]
fn modular_imaginary_subfield_is_inconclusive() {
    let out = run(&["modular", "--p", "337", "--l", "7"]);
    let report = stdout_json(&out);
    assert_eq!(report["verdicts"]["v"], "inconclusive");
    assert_eq!(report["results"]["norm"], Value::Null);
}

#[test]
fn emit_cover_round_trips_through_generic_commands() {
    let dir = tempfile::tempdir().expect("tempdir").keep();
    let path = dir.join("emitted.json");
    let out = run(&[
        "modular",
        "--p",
        "241",
        "--l",
        "5",
        "--emit-cover",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    // The emitted file drives the generic commands; values must match the
    // closed forms.
    let out = run(&[
        "resolvent",
        path.to_str().unwrap(),
        "--sheaf",
        "structure",
        "--character",
        "1",
    ]);
    let report = stdout_json(&out);
    assert_eq!(coefficient(&report, "y0"), ("1", "5"));

    let out = run(&[
        "invariants",
        path.to_str().unwrap(),
        "--sheaf",
        "canonical-half",
    ]);
    let report = stdout_json(&out);
    let rows = report["results"]["rows"].as_array().unwrap();
    let deltas: Vec<&str> = rows
        .iter()
        .map(|r| r["euler_delta"].as_str().unwrap())
        .collect();
    assert_eq!(deltas, vec!["0", "0", "-14", "-6"]);
}

#[test]
fn emit_cover_to_stdout() {
    let out = run(&["modular", "--p", "241", "--l", "5", "--emit-cover", "-"]);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["group_order"], 5);
    assert_eq!(doc["residue_prime"], 241);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().expect("tempdir").keep();
    let path = dir.join("broken.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(&["resolvent", path.to_str().unwrap(), "--character", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("broken.json"));

    // invalid cover: even group order
    std::fs::write(
        &path,
        r#"{"group_order": 4, "residue_prime": 7, "components": [], "intersections": []}"#,
    )
    .unwrap();
    let out = run(&["resolvent", path.to_str().unwrap(), "--character", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even group order"));
}

#[test]
fn reports_are_deterministic_and_round_trip() {
    let run_once = || run(&["modular", "--p", "241", "--l", "5"]);
    let a = run_once();
    let b = run_once();
    let mut va: Value = serde_json::from_slice(&a.stdout).unwrap();
    let mut vb: Value = serde_json::from_slice(&b.stdout).unwrap();
    // timing is the only field allowed to differ between identical runs
    va.as_object_mut().unwrap().remove("timing_ms");
    vb.as_object_mut().unwrap().remove("timing_ms");
    assert_eq!(va, vb);

    // re-parsing and re-emitting the machine section is byte-identical
    let text = String::from_utf8(a.stdout).unwrap();
    let parsed: Value = serde_json::from_str(&text).unwrap();
    let re_emitted = format!("{}\n", serde_json::to_string_pretty(&parsed).unwrap());
    assert_eq!(text, re_emitted);
}
