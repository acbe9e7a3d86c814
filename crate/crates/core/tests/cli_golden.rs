mod common;

use common::{check_goldens, run_cli};

#[test]
fn golden_outputs_match() {
    assert_eq!(check_goldens().unwrap(), 4);
}

#[test]
fn every_default_validates_through_the_cli() {
    for beats in ["2", "3", "4", "6"] {
        let (code, doc, _) = run_cli(&["defaults", "--beats", beats], "");
        assert_eq!(code, 0);
        let (code, report, _) = run_cli(&["validate", "-", "--json"], &doc);
        assert_eq!(code, 0, "{beats} beats: {report}");
        let report: serde_json::Value = serde_json::from_str(&report).unwrap();
        assert!(report["findings"].is_array());
    }
}

#[test]
fn usage_errors_exit_two() {
    let (_, doc, _) = run_cli(&["defaults", "--beats", "4"], "");
    for args in [
        &["sample", "-", "--beta", "1.3"][..],
        &["sample", "-", "--bpm", "0"],
        &["sample", "-", "--count", "1"],
        &["defaults", "--beats", "5"],
        &["render", "-", "--samples-per-segment", "3"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run_cli(args, &doc);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn output_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("curve.svg");
    let (_, doc, _) = run_cli(&["defaults", "--beats", "3"], "");
    let (code, out, _) = run_cli(&["render", "-", "--out", svg.to_str().unwrap()], &doc);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<?xml"));
    assert_eq!(text.matches("class=\"anchor ").count(), 6);

    let bad = dir.path().join("missing-dir").join("x.svg");
    let (code, _, _) = run_cli(&["render", "-", "--out", bad.to_str().unwrap()], &doc);
    assert_eq!(code, 3);
}

#[test]
fn json_samples_parse_back() {
    let (_, doc, _) = run_cli(&["defaults", "--beats", "2"], "");
    let (code, out, _) = run_cli(&["sample", "-", "--format", "json", "--count", "5"], &doc);
    assert_eq!(code, 0);
    let samples: Vec<conducting::MotionSample> = serde_json::from_str(&out).unwrap();
    assert_eq!(samples.len(), 5);
}

#[test]
fn unknown_fields_need_lenient_mode() {
    let (_, doc, _) = run_cli(&["defaults", "--beats", "2"], "");
    let extended = doc.replacen("\"beats\": 2,", "\"beats\": 2,\n  \"author\": \"me\",", 1);
    let (code, _, err) = run_cli(&["validate", "-"], &extended);
    assert_eq!(code, 1);
    assert!(err.contains("author"));
    let (code, _, _) = run_cli(&["--lenient", "validate", "-"], &extended);
    assert_eq!(code, 0);
    let (_, reflected, _) = run_cli(&["--lenient", "reflect", "-"], &extended);
    assert!(reflected.contains("\"author\": \"me\""));
}
