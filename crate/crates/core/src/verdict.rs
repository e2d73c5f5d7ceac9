//! Three-valued outcome shared by every check.

use serde::Serialize;

/// `pass`, `finding` or `fail`. A finding is a mathematically notable outcome that is not a
/// software failure, such as a nonzero kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Finding,
    Fail,
}

impl Verdict {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// The worst of the verdicts, `Pass` for none.
    pub fn combine(vs: impl IntoIterator<Item = Verdict>) -> Self {
        vs.into_iter().max().unwrap_or(Verdict::Pass)
    }

    /// Process exit code: 0, 3 or 2.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Finding => 3,
            Verdict::Fail => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Finding => "finding",
            Verdict::Fail => "fail",
        }
    }
}
