use std::process::{Command, Output};

fn blochlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blochlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn distance_on_the_disc() {
    let o = blochlab(&["distance", "--space", "linf:1", "--x", "0.5", "--y", "-0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("rho  0.800000000000000"), "{text}");
    // atanh(0.8) = ln 3 / 1
    assert!(text.contains("beta 1.0986122886681"), "{text}");
}

#[test]
fn distance_rejects_unsupported_pairs_and_bad_literals() {
    let o = blochlab(&["distance", "--space", "lp:3:2", "--x", "0.3,0.1", "--y", "0.2,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = blochlab(&["distance", "--space", "linf:2", "--x", "0.3,oops", "--y", "0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oops"));
    // one point at the origin is fine on any ℓp ball
    let o = blochlab(&["distance", "--space", "lp:3:2", "--x", "0.3,0.4i", "--y", "0,0"]);
    assert!(o.status.success());
}

#[test]
fn seminorm_json_for_catalog_and_expression() {
    let o = blochlab(&[
        "seminorm", "--kind", "inv", "--space", "lp:3:2", "--fn", "reciprocal", "--budget", "2000", "--seed", "4", "--json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["function"], "reciprocal[lp:3:2]");
    assert!((v["estimate"]["value"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let o = blochlab(&["seminorm", "--kind", "nat", "--space", "linf:1", "--fn", "x1^2", "--budget", "2000", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let est = v["estimate"]["value"].as_f64().unwrap();
    // sup (1-r²)·2r = 4/(3√3)
    assert!((est - 4.0 / (3.0 * 3f64.sqrt())).abs() < 1e-6, "{est}");
}

#[test]
fn seminorm_reports_divergence_in_text_mode() {
    let o = blochlab(&["seminorm", "--kind", "inv", "--space", "linf:2", "--fn", "countex1", "--budget", "5000"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("divergent"));
}

#[test]
fn seminorm_rejects_wrong_arity() {
    let o = blochlab(&["seminorm", "--kind", "nat", "--space", "linf:1", "--fn", "x1*x2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let j = json.to_str().unwrap();
    let o = blochlab(&["verify", "schwarz_pick", "--budget", "64", "--seed", "3", "--json-out", j]);
    assert!(o.status.success(), "{}", stdout(&o));
    let first = std::fs::read(&json).unwrap();
    blochlab(&["verify", "schwarz_pick", "--budget", "64", "--seed", "3", "--json-out", j]);
    assert_eq!(first, std::fs::read(&json).unwrap(), "JSON must be byte-identical");
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert_eq!(v["seed"], 3);
    assert!(v["suites"][0]["checks"].as_array().unwrap().iter().all(|c| c["status"] == "pass"));

    let o = blochlab(&["verify", "metric", "--budget", "64", "--csv-out", csv.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("suite,check,status,value,bound,tolerance,details\n"));
    assert!(text.lines().count() > 5);
}

#[test]
fn verify_unknown_suite_fails() {
    let o = blochlab(&["verify", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}
