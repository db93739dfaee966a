use std::fs;

use schwarz_core::harness::{emit_plot_data, run_suite, search_runs, Suite, SuiteConfig};

fn small(suites: Vec<Suite>) -> SuiteConfig {
    SuiteConfig { seed: 3, samples_per_check: 20, dimensions: vec![1, 2], suites, ..SuiteConfig::default() }
}

#[test]
fn ball_and_holo_suites_pass_on_a_small_run() {
    let report = run_suite(&small(vec![Suite::Ball, Suite::Holo])).unwrap();
    assert!(report.pass, "{}", report.to_json().unwrap());
    assert_eq!(report.suites.len(), 2);
    for suite in report.suites.values() {
        assert!(suite.cases > 0);
        assert!(suite.errors.is_empty());
    }
}

#[test]
fn reports_are_reproducible_and_independent_of_output_dir() {
    let mut a = small(vec![Suite::Minimal]);
    let mut b = a.clone();
    a.out = Some("/tmp/one".into());
    b.out = Some("/tmp/two".into());
    let ja = run_suite(&a).unwrap().to_json().unwrap();
    let jb = run_suite(&b).unwrap().to_json().unwrap();
    assert_eq!(ja, jb);

    let mut c = a.clone();
    c.seed = 4;
    assert_ne!(ja, run_suite(&c).unwrap().to_json().unwrap());
}

#[test]
fn written_report_has_json_margins_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let report = run_suite(&small(vec![Suite::Ball])).unwrap();
    report.write(dir.path()).unwrap();

    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(json["pass"], serde_json::Value::Bool(true));
    assert_eq!(json["config"]["seed"], 3);
    assert!(json["suites"]["ball"]["checks"].is_object());
    assert!(json.get("wall_time").is_none());

    let csv = fs::read_to_string(dir.path().join("margins.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "suite,check,count,failures,min_margin,tolerance");
    assert!(lines.all(|l| l.starts_with("ball,") && l.split(',').count() == 6));

    let timing: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("timing.json")).unwrap()).unwrap();
    assert!(timing.is_object());
}

#[test]
fn plot_data_files_have_headers_and_rows() {
    let dir = tempfile::tempdir().unwrap();
    let searches = search_runs(1, 2).unwrap();
    let paths = emit_plot_data(&searches, dir.path()).unwrap();
    let names: Vec<String> = paths.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
    for expected in ["extremal_family.csv", "distance_planar.csv", "distance_enneper.csv", "search_traces.csv"] {
        assert!(names.iter().any(|n| n == expected), "missing {expected} in {names:?}");
    }
    for path in &paths {
        let text = fs::read_to_string(path).unwrap();
        let mut lines = text.lines();
        let width = lines.next().unwrap().split(',').count();
        let rows: Vec<&str> = lines.collect();
        assert!(!rows.is_empty(), "{}", path.display());
        assert!(rows.iter().all(|r| r.split(',').count() == width), "{}", path.display());
    }
}
