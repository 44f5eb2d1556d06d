//! Verification reports: named checks with a verdict and a JSON certificate.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckVerdict {
    Pass,
    Fail,
    /// Not decided within the resource limits. Never a refutation.
    Unresolved,
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckVerdict::Pass => "pass",
            CheckVerdict::Fail => "fail",
            CheckVerdict::Unresolved => "unresolved",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub verdict: CheckVerdict,
    pub certificate: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Check {
    pub fn new(id: impl Into<String>, verdict: CheckVerdict, certificate: Value) -> Self {
        Check { id: id.into(), verdict, certificate, wall_time_ms: None }
    }

    pub fn from_bool(id: impl Into<String>, ok: bool, certificate: Value) -> Self {
        Check::new(id, if ok { CheckVerdict::Pass } else { CheckVerdict::Fail }, certificate)
    }

    /// An error inside a check leaves it unresolved, with the message as certificate.
    pub fn unresolved(id: impl Into<String>, error: impl fmt::Display) -> Self {
        Check::new(id, CheckVerdict::Unresolved, json!({ "error": error.to_string() }))
    }

    pub fn passed(&self) -> bool {
        self.verdict == CheckVerdict::Pass
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unresolved: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub exit_code: i32,
}

impl Report {
    pub fn new(suite: impl Into<String>, parameters: Value, checks: Vec<Check>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.verdict {
                CheckVerdict::Pass => summary.pass += 1,
                CheckVerdict::Fail => summary.fail += 1,
                CheckVerdict::Unresolved => summary.unresolved += 1,
            }
        }
        let exit_code = exit_code(&summary);
        Report { suite: suite.into(), parameters, checks, summary, exit_code }
    }

    pub fn all_passed(&self) -> bool {
        self.exit_code == 0
    }
}

/// 0 when everything passed, 1 on any failure, 2 when some check is unresolved.
pub fn exit_code(summary: &Summary) -> i32 {
    if summary.fail > 0 {
        1
    } else if summary.unresolved > 0 {
        2
    } else {
        0
    }
}
