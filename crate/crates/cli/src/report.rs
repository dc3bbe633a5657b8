//! Check records, suite reports, and their text and JSON renderings.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Self::Pass
    }

    fn tag(self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// Passes when the property holds.
    Positive,
    /// Passes when the property is observed to fail.
    ExpectedFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub kind: CheckKind,
    pub verdict: Verdict,
    /// What the underlying property did; differs from `verdict` for expected failures.
    pub observed: Verdict,
    pub tolerance: String,
    pub max_deviation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Shortest round-trip decimal form, so reports diff cleanly.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        "0".into()
    } else {
        format!("{x:e}")
    }
}

impl CheckRecord {
    /// Passes when `deviation <= tol`.
    pub fn within(id: &str, anchor: &str, deviation: f64, tol: f64) -> Self {
        Self::positive(id, anchor, deviation <= tol, deviation, tol)
    }

    pub fn positive(id: &str, anchor: &str, holds: bool, deviation: f64, tol: f64) -> Self {
        let observed = Verdict::from_bool(holds && !deviation.is_nan());
        Self {
            id: id.into(),
            anchor: anchor.into(),
            kind: CheckKind::Positive,
            verdict: observed,
            observed,
            tolerance: fmt_float(tol),
            max_deviation: fmt_float(deviation),
            witness: None,
        }
    }

    /// A deliberate negative case: `holds` is the underlying property.
    pub fn expected_failure(id: &str, anchor: &str, holds: bool, deviation: f64, tol: f64) -> Self {
        let observed = Verdict::from_bool(holds);
        Self {
            id: id.into(),
            anchor: anchor.into(),
            kind: CheckKind::ExpectedFailure,
            verdict: Verdict::from_bool(!holds),
            observed,
            tolerance: fmt_float(tol),
            max_deviation: fmt_float(deviation),
            witness: None,
        }
    }

    /// A check that could not run at all.
    pub fn errored(id: &str, anchor: &str, err: impl std::fmt::Display) -> Self {
        Self {
            id: id.into(),
            anchor: anchor.into(),
            kind: CheckKind::Positive,
            verdict: Verdict::Fail,
            observed: Verdict::Fail,
            tolerance: "-".into(),
            max_deviation: "NaN".into(),
            witness: Some(format!("error: {err}")),
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub verdict: Verdict,
    pub checks: Vec<CheckRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time: String,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, seed: u64, trials: usize) -> Self {
        Self {
            suite: suite.into(),
            seed,
            trials,
            verdict: Verdict::Pass,
            checks: Vec::new(),
            notes: Vec::new(),
            wall_time: String::new(),
        }
    }

    pub fn push(&mut self, c: CheckRecord) {
        if !c.verdict.is_pass() {
            self.verdict = Verdict::Fail;
        }
        self.checks.push(c);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Appends every check of `other` with its suite name as an id prefix.
    pub fn absorb(&mut self, other: SuiteReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn set_wall_time(&mut self, d: Duration) {
        self.wall_time = format!("{:.3}s", d.as_secs_f64());
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (seed {}, trials {})", self.suite, self.seed, self.trials);
        let id_width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.checks {
            let expected = if c.kind == CheckKind::ExpectedFailure {
                format!(" ({} as expected)", c.observed.tag())
            } else {
                String::new()
            };
            let _ = write!(
                out,
                "  [{}] {:<w$}  dev {} (tol {}){}  [{}]",
                c.verdict.tag(),
                c.id,
                c.max_deviation,
                c.tolerance,
                expected,
                c.anchor,
                w = id_width
            );
            if let Some(w) = &c.witness {
                let _ = write!(out, "\n         {w}");
            }
            out.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let passed = self.checks.iter().filter(|c| c.verdict.is_pass()).count();
        let _ = writeln!(
            out,
            "{}: {passed}/{} checks passed in {}",
            self.verdict.tag(),
            self.checks.len(),
            self.wall_time
        );
        out
    }
}
