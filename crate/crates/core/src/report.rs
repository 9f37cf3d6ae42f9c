//! Verification reports with a stable JSON form.

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    SkippedDegenerate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Pass => write!(f, "pass"),
            Status::Fail => write!(f, "fail"),
            Status::SkippedDegenerate => write!(f, "skipped-degenerate"),
        }
    }
}

/// Outcome of one verification run: a named check, its inputs rendered as
/// text, an overall status, the first disagreeing pair when it failed, and
/// free-form notes (one line per sub-check).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub theorem: String,
    pub inputs: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
    pub notes: Vec<String>,
    pub version: String,
}

impl VerificationReport {
    pub fn new(theorem: impl Into<String>, inputs: impl Into<String>) -> Self {
        VerificationReport {
            theorem: theorem.into(),
            inputs: inputs.into(),
            status: Status::Pass,
            lhs: String::new(),
            rhs: String::new(),
            notes: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Records a failure; the first failing pair is kept in `lhs`/`rhs`.
    pub fn fail(&mut self, lhs: impl fmt::Display, rhs: impl fmt::Display, line: impl Into<String>) {
        if self.status != Status::Fail {
            self.lhs = lhs.to_string();
            self.rhs = rhs.to_string();
        }
        self.status = Status::Fail;
        self.notes.push(line.into());
    }

    /// Marks the whole case as degenerate-skipped unless it already failed.
    pub fn skip(&mut self, line: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::SkippedDegenerate;
        }
        self.notes.push(line.into());
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("bad report JSON: {e}")))
    }
}

/// First mismatch of a sub-check: rendered lhs, rhs, and where it happened.
pub(crate) type Mismatch = (String, String, String);

pub(crate) fn mismatch(
    lhs: impl fmt::Display,
    rhs: impl fmt::Display,
    at: String,
) -> Result<(), Mismatch> {
    Err((lhs.to_string(), rhs.to_string(), at))
}

/// Folds a sub-check outcome into the report: one pass note, or a failure
/// with the first witness.
pub(crate) fn record(
    report: &mut VerificationReport,
    name: &str,
    scope: &str,
    out: Result<(), Mismatch>,
) {
    match out {
        Ok(()) => report.note(format!("{name} ({scope}): pass")),
        Err((lhs, rhs, at)) => report.fail(lhs, rhs, format!("{name}: mismatch at {at}")),
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} [{}]", self.theorem, self.status, self.inputs)?;
        if self.status == Status::Fail {
            writeln!(f, "  lhs: {}", self.lhs)?;
            writeln!(f, "  rhs: {}", self.rhs)?;
        }
        for n in &self.notes {
            writeln!(f, "  - {n}")?;
        }
        Ok(())
    }
}
