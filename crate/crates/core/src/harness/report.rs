use std::path::Path;
use std::str::FromStr;

use super::{HarnessError, Report};

pub const CSV_HEADER: &str = "suite,check,status,value,bound,tolerance,details";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!("unknown report format {other:?} (expected json or csv)")),
        }
    }
}

pub fn to_json(report: &Report) -> Result<String, HarnessError> {
    let mut s = serde_json::to_string_pretty(report).map_err(|e| HarnessError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn num(v: f64) -> String {
    if v.is_finite() {
        // shortest round-trip representation, same as the JSON writer
        serde_json::Number::from_f64(v).map(|n| n.to_string()).unwrap_or_default()
    } else {
        String::new()
    }
}

pub fn to_csv(report: &Report) -> Result<String, HarnessError> {
    let err = |e: csv::Error| HarnessError::Serialize(e.to_string());
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).map_err(err)?;
    for c in report.checks() {
        w.write_record([
            c.suite.as_str(),
            c.check.as_str(),
            c.status.as_str(),
            &num(c.value),
            &num(c.bound),
            &num(c.tolerance),
            c.details.as_str(),
        ])
        .map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Serialize(e.to_string()))
}

/// Writes the report. Output is a pure function of the report, so equal
/// reports give byte-identical files.
pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<(), HarnessError> {
    if report.suites.is_empty() {
        return Err(HarnessError::EmptyReport);
    }
    let text = match format {
        ReportFormat::Json => to_json(report)?,
        ReportFormat::Csv => to_csv(report)?,
    };
    std::fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{CheckResult, SuiteReport};
    use super::*;

    fn sample() -> Report {
        Report::new(
            7,
            vec![SuiteReport {
                name: "demo".into(),
                checks: vec![
                    CheckResult::at_most("demo", "a", 0.5, 1.0, 1e-9, "fine, really"),
                    CheckResult::at_least("demo", "b", f64::INFINITY, 2.0, 0.0, ""),
                    CheckResult::skipped("demo", "c", "no closed form"),
                ],
            }],
        )
    }

    #[test]
    fn json_nulls_non_finite() {
        let s = to_json(&sample()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["seed"], 7);
        let checks = &v["suites"][0]["checks"];
        assert_eq!(checks[0]["status"], "pass");
        assert!(checks[1]["value"].is_null());
        assert_eq!(checks[2]["status"], "skipped");
        assert!(checks[0].get("suite").is_none());
    }

    #[test]
    fn csv_layout() {
        let s = to_csv(&sample()).unwrap();
        let mut lines = s.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert_eq!(lines.next().unwrap(), "demo,a,pass,0.5,1.0,1e-9,\"fine, really\"");
        assert_eq!(lines.next().unwrap(), "demo,b,pass,,2.0,0.0,");
    }

    #[test]
    fn empty_report_is_rejected() {
        let dir = std::env::temp_dir().join("blochlab-empty-report.json");
        assert!(matches!(
            emit_report(&Report::new(0, vec![]), ReportFormat::Json, &dir),
            Err(HarnessError::EmptyReport)
        ));
    }
}
