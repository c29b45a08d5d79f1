use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Computed value worth showing even on success.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Record {
    pub fn pass(id: impl Into<String>) -> Self {
        Record { id: id.into(), status: Status::Pass, witness: None, value: None, timing_ms: None }
    }

    pub fn fail(id: impl Into<String>, witness: impl Into<String>) -> Self {
        Record { id: id.into(), status: Status::Fail, witness: Some(witness.into()), value: None, timing_ms: None }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Record { id: id.into(), status: Status::Skipped, witness: None, value: Some(reason.into()), timing_ms: None }
    }

    /// Pass iff `witness` is `None`.
    pub fn check(id: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(id),
            Some(w) => Self::fail(id, w),
        }
    }

    pub fn with_value(mut self, v: impl Into<String>) -> Self {
        self.value = Some(v.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub model: String,
    pub gamma: String,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{} on {} (gamma {}, seed {})", self.command, self.model, self.gamma, self.seed).unwrap();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skipped => "SKIP",
            };
            write!(out, "{}  {}", tag, r.id).unwrap();
            if let Some(v) = &r.value {
                write!(out, "  [{}]", v).unwrap();
            }
            if let Some(t) = r.timing_ms {
                write!(out, "  {:.1} ms", t).unwrap();
            }
            out.push('\n');
            if let Some(w) = &r.witness {
                writeln!(out, "      witness: {}", w).unwrap();
            }
        }
        let fails = self.failures().count();
        writeln!(out, "{} records, {} failed", self.records.len(), fails).unwrap();
        out
    }
}
