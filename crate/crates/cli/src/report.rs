//! JSON report schema. Every field is an integer, a string or an array, so a
//! parsed report re-serializes to the same bytes.

use serde::{Deserialize, Serialize};
use symid_core::identities::{IdentityReport, Params, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: RunConfig,
    pub instances: Vec<InstanceRecord>,
    pub summary: RunSummary,
}

/// The command line as resolved; ranges keep their `a..b` spelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub identity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<String>,
    pub format: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub identity: String,
    pub params: Params,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diff: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl InstanceRecord {
    pub fn from_report(report: &IdentityReport, timings: bool) -> Self {
        InstanceRecord {
            identity: report.identity().to_string(),
            params: report.params().clone(),
            verdict: report.verdict,
            diff: report.diff.clone(),
            note: report.note().map(str::to_string),
            elapsed_us: timings.then_some(report.elapsed.as_micros() as u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub params: Params,
    pub diff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunSummary {
    pub total: usize,
    pub passes: usize,
    pub failures: usize,
    /// Grid points outside the identity's domain, not run.
    pub skipped: usize,
    pub failed: Vec<FailureRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl RunSummary {
    pub fn from_records(records: &[InstanceRecord], skipped: usize) -> Self {
        let failed: Vec<FailureRecord> = records
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .map(|r| FailureRecord {
                params: r.params.clone(),
                diff: r.diff.clone().unwrap_or_default(),
            })
            .collect();
        RunSummary {
            total: records.len(),
            passes: records.len() - failed.len(),
            failures: failed.len(),
            skipped,
            failed,
            wall_ms: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeriveReport {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub lhs: String,
    pub terms: Vec<DerivedTerm>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedTerm {
    pub term: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: String,
    pub n: usize,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    pub label: String,
    pub value: String,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}
