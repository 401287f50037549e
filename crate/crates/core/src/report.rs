//! JSON report schema shared by every verification routine.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE: &str = concat!("takiff-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Error => "ERROR",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub status: Status,
    pub witness: String,
    /// Wall-clock milliseconds; only filled when timing is requested, so
    /// default reports stay byte-identical across runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub engine: String,
    pub suite: String,
    #[serde(default)]
    pub config: Value,
    pub checks: Vec<CheckRecord>,
    /// Suite-specific payload (solutions, matrices, recovered values).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            engine: ENGINE.to_string(),
            suite: suite.into(),
            config: Value::Null,
            checks: Vec::new(),
            data: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, status: Status, witness: impl Into<String>) {
        self.checks.push(CheckRecord {
            id: id.into(),
            status,
            witness: witness.into(),
            duration_ms: None,
        });
    }

    pub fn check(&mut self, id: impl Into<String>, ok: bool, witness: impl Into<String>) {
        self.push(id, Status::from_bool(ok), witness);
    }

    /// Appends another report's checks with `prefix/` prepended to each id.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.id = format!("{prefix}/{}", c.id);
            self.checks.push(c);
        }
        for (k, v) in other.data {
            self.data.insert(format!("{prefix}/{k}"), v);
        }
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// True iff no check failed or errored.
    pub fn ok(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Error) == 0
    }

    pub fn all_pass(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Sorts checks by id so parallel producers give a stable order.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs `f` and records its duration on the last check it pushed, if timing is on.
pub fn timed<T>(timing: bool, report: &mut Report, f: impl FnOnce(&mut Report) -> T) -> T {
    let start = Instant::now();
    let out = f(report);
    if timing {
        if let Some(last) = report.checks.last_mut() {
            last.duration_ms = Some(start.elapsed().as_millis() as u64);
        }
    }
    out
}
