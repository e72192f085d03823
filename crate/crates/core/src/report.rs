//! JSON-lines check records shared by the oracles, the corpus runner and the CLI.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub detail: Value,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        instance: impl Into<String>,
        verdict: Verdict,
        detail: Value,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            instance: instance.into(),
            verdict,
            detail,
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

/// True when no record failed; skipped records do not count as failures.
pub fn all_passed(records: &[CheckRecord]) -> bool {
    records.iter().all(|r| r.verdict != Verdict::Fail)
}
