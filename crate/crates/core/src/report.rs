//! Machine-readable verification reports: a single JSON document with a
//! schema version gate, the run configuration, and one entry per check
//! result. Serialization is deterministic for fixed results, so re-running
//! with the same configuration and seed reproduces bit-identical entries.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::CheckResult;

pub const REPORT_SCHEMA_VERSION: &str = "1";

/// Top-level configuration echoed into a report.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct SuiteConfig {
    pub checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[serde(rename = "N")]
    pub dim: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
    pub n_samples: u64,
    pub seed: u64,
    pub z_threshold: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    /// Schema version; parsing rejects anything unknown.
    pub version: String,
    /// Tool name and version that produced the report.
    pub tool: String,
    pub timestamp: String,
    pub config: SuiteConfig,
    pub results: Vec<CheckResult>,
    pub pass: bool,
}

impl Report {
    pub fn new(config: SuiteConfig, results: Vec<CheckResult>) -> Self {
        let pass = !results.is_empty() && results.iter().all(|r| r.pass);
        Report {
            version: REPORT_SCHEMA_VERSION.to_string(),
            tool: format!("cftv {}", env!("CARGO_PKG_VERSION")),
            timestamp: chrono::Utc::now().to_rfc3339(),
            config,
            results,
            pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Parses a report, gating on the schema version.
    pub fn from_json(s: &str) -> Result<Report> {
        let report: Report = serde_json::from_str(s)
            .map_err(|e| Error::BadParameter(format!("malformed report: {e}")))?;
        if report.version != REPORT_SCHEMA_VERSION {
            return Err(Error::BadParameter(format!(
                "unsupported report schema version '{}'",
                report.version
            )));
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::{CheckConfig, SideValue};

    fn tiny_result() -> CheckResult {
        CheckResult {
            name: "check_demo".into(),
            regime: "m=N".into(),
            config: CheckConfig::new("check_demo"),
            lhs: SideValue::Estimate {
                mean_re: 1.0,
                mean_im: 0.0,
                stderr: 0.01,
                n: 100,
                seed: 7,
            },
            rhs: SideValue::Exact {
                exact: "1/2".into(),
            },
            z: 0.5,
            pass: true,
            notes: String::new(),
        }
    }

    #[test]
    fn round_trip_is_idempotent() {
        let report = Report::new(
            SuiteConfig {
                checks: vec!["check_demo".into()],
                n_samples: 100,
                seed: 7,
                z_threshold: 4.0,
                ..Default::default()
            },
            vec![tiny_result()],
        );
        let one = report.to_json();
        let parsed = Report::from_json(&one).unwrap();
        let two = parsed.to_json();
        assert_eq!(one, two);
    }

    #[test]
    fn version_gate() {
        let mut report = Report::new(
            SuiteConfig {
                checks: vec![],
                n_samples: 1,
                seed: 0,
                z_threshold: 4.0,
                ..Default::default()
            },
            vec![tiny_result()],
        );
        report.version = "999".into();
        let s = report.to_json();
        assert!(Report::from_json(&s).is_err());
    }

    #[test]
    fn side_value_shapes() {
        let est = serde_json::to_value(SideValue::Estimate {
            mean_re: 0.25,
            mean_im: 0.0,
            stderr: 0.001,
            n: 1000,
            seed: 3,
        })
        .unwrap();
        assert!(est.get("mean_re").is_some() && est.get("stderr").is_some());
        let exact = serde_json::to_value(SideValue::Exact {
            exact: "2/5".into(),
        })
        .unwrap();
        assert_eq!(exact.get("exact").unwrap(), "2/5");
    }
}
