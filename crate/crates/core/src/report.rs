//! Verdict records shared by the verifiers and the suite runner.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
    /// The hypothesis never applied, so the claim holds trivially.
    Vacuous,
    Undecided,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_failure(self) -> bool {
        self == Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Vacuous => "vacuous",
            Status::Undecided => "undecided",
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked claim: `lhs ≤ rhs` style comparisons keep both sides as exact
/// decimal strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub instance: String,
    pub lhs: String,
    pub rhs: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl Verdict {
    pub fn new(claim: &str, instance: impl Into<String>, lhs: impl ToString, rhs: impl ToString, status: Status) -> Self {
        Verdict {
            claim: claim.to_string(),
            instance: instance.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            status,
            witness: None,
            note: None,
        }
    }

    /// `lhs ≤ rhs` as a pass/fail verdict.
    pub fn at_most<T: PartialOrd + ToString>(claim: &str, instance: impl Into<String>, lhs: T, rhs: T) -> Self {
        let status = Status::from_bool(lhs <= rhs);
        Self::new(claim, instance, lhs.to_string(), rhs.to_string(), status)
    }

    /// `lhs = rhs` as a pass/fail verdict.
    pub fn equal<T: PartialEq + ToString>(claim: &str, instance: impl Into<String>, lhs: T, rhs: T) -> Self {
        let status = Status::from_bool(lhs == rhs);
        Self::new(claim, instance, lhs.to_string(), rhs.to_string(), status)
    }

    /// [`Verdict::equal`] for composite values, rendered with `Debug`.
    pub fn same<T: PartialEq + std::fmt::Debug>(claim: &str, instance: impl Into<String>, lhs: T, rhs: T) -> Self {
        let status = Status::from_bool(lhs == rhs);
        Self::new(claim, instance, format!("{lhs:?}"), format!("{rhs:?}"), status)
    }

    pub fn with_witness(mut self, w: serde_json::Value) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comparisons() {
        assert_eq!(Verdict::at_most("c", "x", 12u64, 15).status, Status::Pass);
        assert_eq!(Verdict::at_most("c", "x", 16u64, 15).status, Status::Fail);
        assert_eq!(Verdict::equal("c", "x", 3, 3).status, Status::Pass);
        let json = serde_json::to_string(&Verdict::at_most("c", "x", 1, 2)).unwrap();
        assert!(json.contains("\"status\":\"pass\""));
        assert!(!json.contains("witness"));
    }
}
