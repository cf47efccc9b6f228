use blochlab_core::harness::{emit_report, run, ReportFormat, CSV_HEADER};

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("blochlab-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for (fmt, ext) in [(ReportFormat::Json, "json"), (ReportFormat::Csv, "csv")] {
        let a = dir.join(format!("a.{ext}"));
        let b = dir.join(format!("b.{ext}"));
        emit_report(&run("bidisc_separation", 11, 512).unwrap(), fmt, &a).unwrap();
        emit_report(&run("bidisc_separation", 11, 512).unwrap(), fmt, &b).unwrap();
        assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    }
    let csv = std::fs::read_to_string(dir.join("a.csv")).unwrap();
    assert_eq!(csv.lines().next(), Some(CSV_HEADER));
    assert!(csv.lines().skip(1).all(|l| l.starts_with("bidisc_separation,")));

    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.join("a.json")).unwrap()).unwrap();
    assert_eq!(json["version"], 1);
    assert_eq!(json["seed"], 11);
    assert_eq!(json["suites"][0]["name"], "bidisc_separation");
    let check = &json["suites"][0]["checks"][0];
    for key in ["check", "status", "value", "bound", "tolerance", "details"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn unwritable_path_reports_the_path() {
    let report = run("schwarz_pick", 1, 16).unwrap();
    let err = emit_report(&report, ReportFormat::Json, std::path::Path::new("/nonexistent-dir/x.json")).unwrap_err();
    assert!(err.to_string().contains("/nonexistent-dir/x.json"));
}
