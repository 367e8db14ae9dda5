//! Outcome records of verification checks.

use std::fmt;

/// A passed check: what was compared and a short description of the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, detail: impl Into<String>) -> Self {
        CheckReport { name: name.into(), detail: detail.into() }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.detail)
    }
}
