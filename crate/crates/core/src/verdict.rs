//! Three-valued check results.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Holds,
    Fails,
    UpToBound,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::UpToBound => "UpToBound",
        })
    }
}

impl std::str::FromStr for Status {
    type Err = String;
    fn from_str(s: &str) -> Result<Status, String> {
        match s {
            "Holds" => Ok(Status::Holds),
            "Fails" => Ok(Status::Fails),
            "UpToBound" => Ok(Status::UpToBound),
            other => Err(format!("unknown status '{other}'")),
        }
    }
}

/// A check result. `Fails` carries a witness; `Holds` carries a
/// certificate; `UpToBound` carries the evidence gathered in `certificate`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub bound: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
}

impl Verdict {
    pub fn holds(check: &str, bound: usize, certificate: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            status: Status::Holds,
            bound,
            witness: None,
            certificate: Some(certificate.into()),
        }
    }

    pub fn fails(check: &str, bound: usize, witness: impl Into<String>) -> Verdict {
        Verdict { check: check.into(), status: Status::Fails, bound, witness: Some(witness.into()), certificate: None }
    }

    pub fn up_to_bound(check: &str, bound: usize, evidence: impl Into<String>) -> Verdict {
        Verdict {
            check: check.into(),
            status: Status::UpToBound,
            bound,
            witness: None,
            certificate: Some(evidence.into()),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }

    pub fn renamed(mut self, check: &str) -> Verdict {
        self.check = check.into();
        self
    }
}
