use std::path::{Path, PathBuf};
use std::process::Command;

use dgla_cli::format::{parse, FixtureFile};
use dgla_cli::report::{Report, Status};
use dgla_core::bv::DegenerationWitness;
use dgla_core::cartan::{BttCertificate, BttVerdict};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> (i32, String) {
    let mut all = vec!["dglab".to_string()];
    all.extend(args.iter().map(|s| s.to_string()));
    dgla_cli::run(&all)
}

fn json(args: &[&str]) -> (i32, Report) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, out) = run(&all);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn shipped_corpus_matches_its_classification() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut seen = 0;
    let (mut positive, mut negative) = (0, 0);
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let f = parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let expect = f.scenario.as_ref().expect("every fixture has a scenario").expect_exit;
        let (code, out) = run(&["run", &path.display().to_string()]);
        assert_eq!(code, expect, "{}:\n{out}", path.display());
        seen += 1;
        if expect == 0 {
            positive += 1;
        } else {
            negative += 1;
        }
    }
    assert_eq!(seen, dgla_cli::corpus::corpus().len());
    assert!(positive > 10 && negative > 10);
}

#[test]
fn shipped_corpus_is_up_to_date() {
    for (name, generated) in dgla_cli::corpus::corpus() {
        let text = std::fs::read_to_string(fixture(&name)).unwrap_or_else(|_| panic!("{name} missing; run export-corpus"));
        let on_disk: FixtureFile = parse(&text).unwrap();
        assert_eq!(on_disk, generated, "{name} is stale; run `dglab export-corpus crates/cli/fixtures`");
    }
}

#[test]
fn check_on_abelian_fixture_passes() {
    let (code, out) = run(&["check", &fixture("check_abelian").display().to_string()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("check: PASS"));
}

#[test]
fn btt_on_sl2_fails_at_hypothesis_three() {
    let (code, r) = json(&["btt", &fixture("btt_sl2").display().to_string()]);
    assert_eq!(code, 1);
    let cert: BttCertificate = serde_json::from_value(r.detail["certificate"].clone()).unwrap();
    assert_eq!(cert.verdict, BttVerdict::Failed(3));
    assert!(!cert.hypotheses[2].holds && cert.hypotheses[..2].iter().all(|h| h.holds));
}

#[test]
fn degeneration_for_d_equals_delta_serializes_chains() {
    let (code, r) = json(&["bv", "degeneration", &fixture("bv_degeneration_d_equals_delta").display().to_string()]);
    assert_eq!(code, 0);
    let w: DegenerationWitness = serde_json::from_value(r.detail).unwrap();
    assert!(w.holds && !w.chains.is_empty());
}

#[test]
fn reports_round_trip() {
    for name in ["btt_shift_mixed", "bv_pipeline_schouten_acyclic", "mc_order_three_toy", "fiber_end_inclusion"] {
        let (_, out) = run(&["--json", "run", &fixture(name).display().to_string()]);
        let r: Report = serde_json::from_str(&out).unwrap();
        assert_eq!(r.to_json(), out, "{name}");
    }
}

#[test]
fn parse_errors_carry_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "bad.json", "{\n  \"space\": {\"min\": 0, \"dims\": [1]},\n  \"differential\": {\"0\": [[\"1\"]]\n");
    let (code, out) = run(&["check", &p]);
    assert_eq!(code, 2);
    assert!(out.contains("line 4"), "{out}");
}

#[test]
fn unknown_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "extra.json", r#"{"space": {"min": 0, "dims": [1]}, "brackets": {}}"#);
    let (code, out) = run(&["check", &p]);
    assert_eq!(code, 2);
    assert!(out.contains("unknown field `brackets`"), "{out}");
}

#[test]
fn malformed_algebras_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        r#"{"space": {"min": 0, "dims": [1, 1]}, "differential": {"0": [["1", "2"]]}}"#,
        r#"{"space": {"min": 0, "dims": [1]}, "differential": {"0": [["x"]]}}"#,
        r#"{"space": {"min": 0, "names": [["a", "a"]]}}"#,
        r#"{"space": {"min": 0, "names": [["a"]]}, "bracket": {"entries": [["a", "a", "b", "1"]]}}"#,
    ];
    for (k, text) in cases.iter().enumerate() {
        let p = write_temp(&dir, &format!("m{k}.json"), text);
        let (code, r) = json(&["check", &p]);
        assert_eq!((code, r.status), (2, Status::InputError), "case {k}");
    }
}

#[test]
fn hand_written_fixture_with_skew_completion() {
    // sl2 written with half the table; the other half comes from skew-symmetry.
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{
      "space": {"min": 0, "names": [["e", "f", "h"]]},
      "bracket": {"complete": true, "entries": [
        ["e", "f", "h", "1"], ["h", "e", "e", "2"], ["h", "f", "f", "-2"]
      ]}
    }"#;
    let p = write_temp(&dir, "sl2.json", text);
    assert_eq!(run(&["check", "--exhaustive", &p]).0, 0);
    let (code, r) = json(&["cohomology", &p]);
    assert_eq!(code, 0);
    assert_eq!(r.detail["dims"]["0"], 3);
    assert_eq!(r.detail["h_star_abelian"], false);
}

#[test]
fn h_that_is_not_a_subalgebra_is_a_mathematical_failure() {
    let dir = tempfile::tempdir().unwrap();
    // u -> v in M, H = K u is not closed under d.
    let text = r#"{
      "space": {"min": 0, "names": [["u"], ["v"]]},
      "differential": {"0": [["1"]]},
      "algebras": {"L": {"space": {"min": 1, "names": [["x"]]}}},
      "maps": {"i": {"source": "L", "target": "main", "degree": -1, "blocks": {"1": [["1"]]}}},
      "subspaces": {"H": {"ambient": "main", "span": [{"u": "1"}]}}
    }"#;
    let p = write_temp(&dir, "h.json", text);
    let (code, r) = json(&["btt", &p]);
    assert_eq!(code, 1);
    assert_eq!(r.rows[0].check, "precondition");
}

#[test]
fn mc_order_is_capped_by_max_order() {
    let f = fixture("mc_order_three_toy").display().to_string();
    // The first obstruction sits at order 3: capping at 2 hides it.
    assert_eq!(run(&["mc", "--order", "5", "--max-order", "2", &f]).0, 0);
    assert_eq!(run(&["mc", "--order", "5", "--max-order", "3", &f]).0, 1);
}

#[test]
fn scenario_must_name_a_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "loop.json", r#"{"space": {"min": 0, "dims": [1]}, "scenario": {"args": ["run"], "expect_exit": 0}}"#);
    assert_eq!(run(&["run", &p]).0, 2);
}

#[test]
fn verbosity_controls_the_table() {
    let f = fixture("check_sl2").display().to_string();
    let (_, normal) = run(&["check", &f]);
    assert!(normal.lines().count() > 1);
    let quiet = Command::new(env!("CARGO_BIN_EXE_dglab")).args(["check", &f]).env("DGLAB_VERBOSITY", "quiet").output().unwrap();
    assert_eq!(String::from_utf8(quiet.stdout).unwrap(), "check: PASS\n");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dglab");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["run", &fixture("check_sl2").display().to_string()]), Some(0));
    assert_eq!(status(&["run", &fixture("check_sl2_broken_jacobi").display().to_string()]), Some(1));
    assert_eq!(status(&["check", "/nonexistent/file.json"]), Some(2));
    assert_eq!(status(&["frobnicate"]), Some(2));
}
