use std::process::Command;

fn schwarz() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schwarz"))
}

#[test]
fn verify_ball_suite_passes_and_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = schwarz()
        .args(["verify", "--suites", "ball", "--seed", "1", "--samples", "100", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("ball") && l.contains("pass")), "{stdout}");
    for file in ["report.json", "margins.csv", "timing.json"] {
        assert!(dir.path().join(file).is_file(), "missing {file}");
    }
}

#[test]
fn empty_suite_selection_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("empty.conf");
    std::fs::write(&conf, "suites =\n").unwrap();
    let out = schwarz().args(["verify", "--config"]).arg(&conf).arg("--out").arg(dir.path()).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no suites selected"));
}

#[test]
fn unknown_suite_is_rejected() {
    let out = schwarz().args(["verify", "--suites", "ball,disks"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn failing_tolerance_override_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = schwarz()
        .args(["verify", "--suites", "search", "--tolerance", "search_strictness=1e3", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn corpus_dump_is_json_with_requested_count() {
    let out = schwarz().args(["corpus", "--seed", "2", "--dim", "2", "--count", "7"]).output().unwrap();
    assert!(out.status.success());
    let entries: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(entries.as_array().unwrap().len(), 7);

    let again = schwarz().args(["corpus", "--seed", "2", "--dim", "2", "--count", "7"]).output().unwrap();
    assert_eq!(out.stdout, again.stdout);

    let minimal = schwarz().args(["corpus", "--minimal", "--count", "6"]).output().unwrap();
    let entries: serde_json::Value = serde_json::from_slice(&minimal.stdout).unwrap();
    assert_eq!(entries.as_array().unwrap().len(), 6);
}

#[test]
fn search_reports_near_zero_best_margin() {
    let out = schwarz().args(["search", "--family", "one-d", "--restarts", "4"]).output().unwrap();
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let best = report["best_margin"].as_f64().unwrap();
    assert!(best.abs() <= 1e-8, "{best}");
}

#[test]
fn plot_data_lists_written_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = schwarz().args(["plot-data", "--restarts", "2", "--out"]).arg(dir.path()).output().unwrap();
    assert!(out.status.success());
    let listed = String::from_utf8_lossy(&out.stdout);
    assert_eq!(listed.lines().count(), std::fs::read_dir(dir.path()).unwrap().count());
}
