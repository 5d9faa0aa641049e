//! Sweep reports: counts, failures with canonical residuals, JSON and text output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Failures beyond this many are counted but not listed.
pub const FAILURE_CAP: usize = 50;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub law: String,
    pub inputs: Vec<String>,
    pub residual: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub sweep: String,
    pub params: BTreeMap<String, Value>,
    pub checked: u64,
    pub laws: BTreeMap<String, LawTally>,
    pub failures: Vec<Failure>,
    pub failures_total: u64,
    /// Wall-clock time; left empty unless timing was requested, so that
    /// reports are byte-reproducible by default.
    pub elapsed_ms: Option<u64>,
    pub seed: Option<u64>,
    /// Investigative findings that do not affect the verdict.
    pub notes: Vec<String>,
}

impl SweepReport {
    pub fn new(sweep: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            sweep: sweep.to_string(),
            params: BTreeMap::new(),
            checked: 0,
            laws: BTreeMap::new(),
            failures: Vec::new(),
            failures_total: 0,
            elapsed_ms: None,
            seed: None,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn pass(&mut self, law: &str) {
        self.checked += 1;
        self.laws.entry(law.to_string()).or_default().checked += 1;
    }

    pub fn fail(&mut self, law: &str, inputs: Vec<String>, residual: String) {
        self.checked += 1;
        let t = self.laws.entry(law.to_string()).or_default();
        t.checked += 1;
        t.failed += 1;
        self.failures_total += 1;
        if self.failures.len() < FAILURE_CAP {
            self.failures.push(Failure {
                law: law.to_string(),
                inputs,
                residual,
            });
        }
    }

    /// Records one case: a `None` residual is a pass.
    pub fn record(&mut self, law: &str, residual: Option<String>, inputs: impl FnOnce() -> Vec<String>) {
        match residual {
            None => self.pass(law),
            Some(r) => self.fail(law, inputs(), r),
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn passed(&self) -> bool {
        self.failures_total == 0
    }

    pub fn law_passed(&self, law: &str) -> bool {
        self.laws.get(law).is_some_and(|t| t.failed == 0)
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, other: SweepReport) {
        self.checked += other.checked;
        for (law, t) in other.laws {
            let e = self.laws.entry(law).or_default();
            e.checked += t.checked;
            e.failed += t.failed;
        }
        self.failures_total += other.failures_total;
        for f in other.failures {
            if self.failures.len() < FAILURE_CAP {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn set_elapsed(&mut self, d: Duration) {
        self.elapsed_ms = Some(d.as_millis() as u64);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{}: {verdict} ({} cases)", self.sweep, self.checked);
        for (k, v) in &self.params {
            let _ = writeln!(s, "  {k} = {v}");
        }
        for (law, t) in &self.laws {
            let _ = writeln!(s, "  law {law}: {} checked, {} failed", t.checked, t.failed);
        }
        for f in &self.failures {
            let _ = writeln!(s, "  failure [{}] at ({}): {}", f.law, f.inputs.join(", "), f.residual);
        }
        if self.failures_total as usize > self.failures.len() {
            let _ = writeln!(s, "  ... {} failures in total", self.failures_total);
        }
        for n in &self.notes {
            let _ = writeln!(s, "  note: {n}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(s, "  elapsed: {ms} ms");
        }
        s
    }
}
