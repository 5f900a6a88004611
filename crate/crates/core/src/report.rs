//! Sweep reports and their serialized forms.

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

impl Failure {
    pub fn new(input: impl ToString, expected: impl ToString, got: impl ToString) -> Self {
        Failure { input: input.to_string(), expected: expected.to_string(), got: got.to_string() }
    }
}

/// Outcome of one verification sweep. Wall time is kept out of every
/// serialized form and out of equality, so reports are reproducible.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub suite: String,
    pub bound: Option<u64>,
    pub instances: u64,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl PartialEq for SweepReport {
    fn eq(&self, other: &Self) -> bool {
        (&self.suite, self.bound, self.instances, &self.failures)
            == (&other.suite, other.bound, other.instances, &other.failures)
    }
}

impl Eq for SweepReport {}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Serializes a report. JSON keys come out sorted; CSV has one row per failure.
pub fn emit(report: &SweepReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            // serde_json::Map is a BTreeMap, so going through Value sorts keys.
            let value = serde_json::to_value(report).map_err(|e| Error::InvalidInput(e.to_string()))?;
            let mut out = serde_json::to_vec_pretty(&value).map_err(|e| Error::InvalidInput(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let bound = report.bound.map(|b| b.to_string()).unwrap_or_default();
            let instances = report.instances.to_string();
            let csv_err = |e: csv::Error| Error::InvalidInput(e.to_string());
            w.write_record(["suite", "bound", "instances", "input", "expected", "got"]).map_err(csv_err)?;
            for f in &report.failures {
                w.write_record([&report.suite, &bound, &instances, &f.input, &f.expected, &f.got])
                    .map_err(csv_err)?;
            }
            w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))
        }
        Format::Text => {
            let mut s = format!(
                "{} {}{}: {} instances, {} failures\n",
                if report.passed() { "PASS" } else { "FAIL" },
                report.suite,
                report.bound.map(|b| format!(" (bound {b})")).unwrap_or_default(),
                report.instances,
                report.failures.len()
            );
            for f in report.failures.iter().take(20) {
                s.push_str(&format!("  {}: expected {}, got {}\n", f.input, f.expected, f.got));
            }
            if report.failures.len() > 20 {
                s.push_str(&format!("  ... {} more\n", report.failures.len() - 20));
            }
            Ok(s.into_bytes())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(failures: Vec<Failure>) -> SweepReport {
        SweepReport {
            suite: "genus".into(),
            bound: Some(500),
            instances: 152,
            failures,
            wall_time: Duration::from_millis(7),
        }
    }

    #[test]
    fn empty_report_documents() {
        let r = sample(vec![]);
        let json: SweepReport = serde_json::from_slice(&emit(&r, Format::Json).unwrap()).unwrap();
        assert_eq!(json, r);
        let csv = String::from_utf8(emit(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv, "suite,bound,instances,input,expected,got\n");
        let text = String::from_utf8(emit(&r, Format::Text).unwrap()).unwrap();
        assert_eq!(text, "PASS genus (bound 500): 152 instances, 0 failures\n");
    }

    #[test]
    fn json_keys_sorted_and_time_free() {
        let r = sample(vec![Failure::new("D=5", "1", "2")]);
        let s = String::from_utf8(emit(&r, Format::Json).unwrap()).unwrap();
        let pos = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("bound") < pos("failures") && pos("failures") < pos("instances") && pos("instances") < pos("suite"));
        assert!(!s.contains("wall"));
        let mut slower = r.clone();
        slower.wall_time = Duration::from_secs(9);
        assert_eq!(emit(&slower, Format::Json).unwrap(), emit(&r, Format::Json).unwrap());
    }

    #[test]
    fn csv_quotes_fields() {
        let r = sample(vec![Failure::new("(17, 41)", "rank \"4\"", "3")]);
        let csv = String::from_utf8(emit(&r, Format::Csv).unwrap()).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), "genus,500,152,\"(17, 41)\",\"rank \"\"4\"\"\",3");
    }
}
