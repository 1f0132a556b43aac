//! Pass/fail records shared by the verifiers.

use serde::Serialize;

use crate::linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn ok(name: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: true,
            detail: None,
        }
    }

    pub fn fail(name: impl Into<String>, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            pass: false,
            detail: Some(detail.into()),
        }
    }

    /// Exact comparison, reporting the first differing entry.
    pub fn equal(name: impl Into<String>, lhs: &Mat, rhs: &Mat) -> Check {
        let name = name.into();
        if lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols() {
            return Check::fail(name, "shape mismatch");
        }
        let diff = lhs - rhs;
        match diff.first_nonzero() {
            None => Check::ok(name),
            Some((r, c)) => {
                let detail = format!("entry ({r}, {c}): residual {}", diff.get(r, c));
                Check::fail(name, detail)
            }
        }
    }
}
