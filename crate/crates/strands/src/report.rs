//! Tallies for verification sweeps.

use std::fmt;

/// Number of instances checked, plus a witness for each failure.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Failure lists are truncated to this many witnesses.
const MAX_WITNESSES: usize = 50;

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// Counts one instance; records `witness()` when `cond` is false.
    pub fn check(&mut self, cond: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond && self.failures.len() < MAX_WITNESSES {
            self.failures.push(witness());
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.checked += other.checked;
        let room = MAX_WITNESSES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub fn merged(reports: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::new();
        for r in reports {
            out.merge(r);
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} checked, {} failed", self.checked, self.failures.len())?;
        if let Some(first) = self.failures.first() {
            write!(f, " (first: {first})")?;
        }
        Ok(())
    }
}
