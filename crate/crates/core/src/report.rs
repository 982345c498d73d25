//! Uniform pass/fail records shared by every verification routine.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    BudgetExceeded,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::BudgetExceeded => "budget_exceeded",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub instance: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl CheckRecord {
    pub fn new(
        check_id: impl Into<String>,
        instance: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        status: Status,
    ) -> Self {
        CheckRecord {
            check_id: check_id.into(),
            instance: instance.into(),
            expected: expected.into(),
            computed: computed.into(),
            status,
        }
    }

    /// Pass iff `ok`.
    pub fn compare(
        check_id: impl Into<String>,
        instance: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        Self::new(check_id, instance, expected, computed, status)
    }

    /// Pass iff the displayed values coincide.
    pub fn equal<T: PartialEq + fmt::Display>(
        check_id: impl Into<String>,
        instance: impl Into<String>,
        expected: &T,
        computed: &T,
    ) -> Self {
        Self::compare(
            check_id,
            instance,
            expected.to_string(),
            computed.to_string(),
            expected == computed,
        )
    }

    pub fn skipped(check_id: impl Into<String>, instance: impl Into<String>, reason: impl Into<String>) -> Self {
        Self::new(check_id, instance, "", reason, Status::Skipped)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {}: expected {}, computed {}",
            self.status, self.check_id, self.instance, self.expected, self.computed
        )
    }
}

/// Worst status over a set of records: any failure dominates, then budget
/// exhaustion; an empty or all-skipped set counts as skipped.
pub fn overall(records: &[CheckRecord]) -> Status {
    let has = |s| records.iter().any(|r| r.status == s);
    if has(Status::Fail) {
        Status::Fail
    } else if has(Status::BudgetExceeded) {
        Status::BudgetExceeded
    } else if has(Status::Pass) {
        Status::Pass
    } else {
        Status::Skipped
    }
}
