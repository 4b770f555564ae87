//! Outcome records for verification checks.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A printed reference value disagrees with the computed one while the
    /// enclosing statement still verifies.
    Discrepancy,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Discrepancy => "discrepancy",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity or display this check reproduces, in the expression grammar where possible.
    pub anchor: String,
    pub status: Status,
    pub lhs_canonical: String,
    pub rhs_canonical: String,
    pub witness: Option<String>,
}

impl CheckRecord {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        CheckRecord {
            id: id.into(),
            anchor: anchor.into(),
            status: Status::Pass,
            lhs_canonical: String::new(),
            rhs_canonical: String::new(),
            witness: None,
        }
    }

    pub fn sides(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.lhs_canonical = lhs.into();
        self.rhs_canonical = rhs.into();
        self
    }

    pub fn status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    /// Pass when `ok`, otherwise fail.
    pub fn verdict(mut self, ok: bool) -> Self {
        self.status = if ok { Status::Pass } else { Status::Fail };
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

/// Result of one verification operation: a named list of records.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
}

impl CheckReport {
    pub fn new(suite: impl Into<String>) -> Self {
        CheckReport { suite: suite.into(), records: Vec::new() }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
    }

    pub fn count(&self, s: Status) -> usize {
        self.records.iter().filter(|r| r.status == s).count()
    }

    /// No failing record. Discrepancies do not count as failures.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn first_failure(&self) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.status == Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn sort(&mut self) {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub discrepancy: usize,
}

impl CheckReport {
    pub fn summary(&self) -> Summary {
        Summary { pass: self.count(Status::Pass), fail: self.count(Status::Fail), discrepancy: self.count(Status::Discrepancy) }
    }

    /// 0 all pass, 1 any failure, 2 discrepancies only.
    pub fn exit_code(&self) -> i32 {
        let s = self.summary();
        if s.fail > 0 {
            1
        } else if s.discrepancy > 0 {
            2
        } else {
            0
        }
    }

    /// Canonical JSON document: sorted keys, no floating point, no timestamps.
    pub fn to_canonical_json(&self, digests: &[(String, String)]) -> String {
        let body = serde_json::json!({
            "suite": self.suite,
            "records": self.records,
            "summary": self.summary(),
            "tool_version": env!("CARGO_PKG_VERSION"),
            "preset_digests": digests.iter().cloned().collect::<std::collections::BTreeMap<_, _>>(),
        });
        let mut s = serde_json::to_string_pretty(&body).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = self.records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(2);
        for r in &self.records {
            out.push_str(&format!("{:<11} {:<w$}  {}", r.status.to_string(), r.id, r.anchor, w = w));
            if r.status != Status::Pass {
                out.push_str(&format!("\n{:<11} {:<w$}  lhs: {}\n{:<11} {:<w$}  rhs: {}", "", "", r.lhs_canonical, "", "", r.rhs_canonical, w = w));
                if let Some(x) = &r.witness {
                    out.push_str(&format!("\n{:<11} {:<w$}  witness: {}", "", "", x, w = w));
                }
            }
            out.push('\n');
        }
        let s = self.summary();
        out.push_str(&format!("{}: {} pass, {} fail, {} discrepancy\n", self.suite, s.pass, s.fail, s.discrepancy));
        out
    }
}
