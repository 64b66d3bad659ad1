use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::Serialize;

use crate::config::Mode;
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One line of a report. Only deterministic fields; timings are kept separately.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub anchor: String,
    pub status: Status,
    /// 0 for exact checks that pass; the measured error for oracle checks.
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub check_id: String,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub records: Vec<CheckRecord>,
    pub timings: Vec<Timing>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&serde_json::to_string(r).expect("serializable"));
            s.push('\n');
        }
        s
    }

    /// Writes `<suite>.jsonl` and `<suite>.timings.jsonl` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<(), HarnessError> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{}.jsonl", self.suite)), self.to_jsonl())?;
        let mut f = std::fs::File::create(dir.join(format!("{}.timings.jsonl", self.suite)))?;
        for t in &self.timings {
            writeln!(f, "{}", serde_json::to_string(t).expect("serializable"))?;
        }
        Ok(())
    }
}

/// Collects check records in declaration order.
pub struct Checks {
    suite: String,
    mode: Mode,
    tol: f64,
    records: Vec<CheckRecord>,
    timings: Vec<Timing>,
}

impl Checks {
    pub fn new(suite: &str, mode: Mode, tol: f64) -> Self {
        Self {
            suite: suite.to_string(),
            mode,
            tol,
            records: Vec::new(),
            timings: Vec::new(),
        }
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn push(&mut self, id: &str, anchor: &str, status: Status, residual: f64, note: Option<String>, secs: f64) {
        self.records.push(CheckRecord {
            check_id: id.to_string(),
            anchor: anchor.to_string(),
            status,
            residual,
            note,
        });
        self.timings.push(Timing {
            check_id: id.to_string(),
            seconds: secs,
        });
    }

    /// An exact identity: passes only if `f` returns `Ok(true)`.
    pub fn exact<F>(&mut self, id: &str, anchor: &str, f: F)
    where
        F: FnOnce() -> hh_core::Result<bool>,
    {
        if !self.mode.exact() {
            return;
        }
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(true) => self.push(id, anchor, Status::Pass, 0.0, None, secs),
            Ok(false) => self.push(id, anchor, Status::Fail, 1.0, Some("identity does not hold".into()), secs),
            Err(e) => self.push(id, anchor, Status::Fail, 1.0, Some(e.to_string()), secs),
        }
    }

    /// A floating-point comparison: `f` returns the residual (and an optional note).
    pub fn oracle<F>(&mut self, id: &str, anchor: &str, f: F)
    where
        F: FnOnce() -> hh_core::Result<(f64, Option<String>)>,
    {
        self.numeric(id, anchor, self.mode.oracle(), f)
    }

    /// A floating-point check that has no exact counterpart and runs in every mode.
    pub fn numeric<F>(&mut self, id: &str, anchor: &str, enabled: bool, f: F)
    where
        F: FnOnce() -> hh_core::Result<(f64, Option<String>)>,
    {
        if !enabled {
            return;
        }
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok((r, note)) if r <= self.tol => self.push(id, anchor, Status::Pass, r, note, secs),
            Ok((r, note)) => self.push(id, anchor, Status::Fail, r, note, secs),
            Err(e) => self.push(id, anchor, Status::Fail, f64::NAN, Some(e.to_string()), secs),
        }
    }

    pub fn skip(&mut self, id: &str, anchor: &str, note: &str) {
        self.push(id, anchor, Status::Skip, 0.0, Some(note.to_string()), 0.0);
    }

    pub fn finish(self) -> SuiteReport {
        SuiteReport {
            suite: self.suite,
            records: self.records,
            timings: self.timings,
        }
    }
}
