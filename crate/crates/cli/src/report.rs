//! Report model and its text and JSON renderings.

use canmod_core::Case;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Discrepancy,
    Fail,
}

impl Status {
    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Discrepancy => "discrepancy",
            Status::Fail => "fail",
        }
    }
}

/// One comparison between a computed value and its reference.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub computed: String,
    /// "stage: name: computed", filled in when the check joins a stage.
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, computed: impl Into<String>) -> Check {
        Check { name: name.into(), status, computed: computed.into(), summary: String::new(), expected: None, citation: None, details: None }
    }

    /// A boolean check whose computed value is "true" or "false".
    pub fn flag(name: impl Into<String>, ok: bool) -> Check {
        Check::new(name, Status::of(ok), ok.to_string())
    }

    /// Computed against expected, compared as strings.
    pub fn compare(name: impl Into<String>, computed: impl ToString, expected: impl ToString) -> Check {
        let (c, e) = (computed.to_string(), expected.to_string());
        Check::new(name, Status::of(c == e), c).expect(e)
    }

    pub fn expect(mut self, e: impl Into<String>) -> Check {
        self.expected = Some(e.into());
        self
    }

    pub fn cite(mut self, c: impl Into<String>) -> Check {
        self.citation = Some(c.into());
        self
    }

    /// Adds a detail; repeated calls join with "; ".
    pub fn detail(mut self, d: impl Into<String>) -> Check {
        let d = d.into();
        self.details = Some(match self.details.take() {
            Some(prev) => format!("{prev}; {d}"),
            None => d,
        });
        self
    }
}

/// A computed value reported without a pass/fail judgement.
#[derive(Clone, Debug, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u128>,
}

impl StageReport {
    pub fn new(stage: &str) -> StageReport {
        StageReport { stage: stage.to_string(), status: Status::Pass, checks: Vec::new(), facts: Vec::new(), millis: None }
    }

    pub fn check(&mut self, mut c: Check) {
        c.summary = format!("{}: {}: {}", self.stage, c.name, c.computed);
        self.status = self.status.max(c.status);
        self.checks.push(c);
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl ToString) {
        self.facts.push(Fact { name: name.into(), value: value.to_string() });
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub case: Case,
    pub status: Status,
    pub stages: Vec<StageReport>,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Counts {
    pub pass: usize,
    pub discrepancy: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Versions {
    pub tool: String,
    pub data: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub precision: usize,
    pub versions: Versions,
    pub status: Status,
    pub counts: Counts,
    pub cases: Vec<CaseReport>,
}

impl Report {
    pub fn new(command: &str, precision: usize, data_version: u32, cases: Vec<CaseReport>) -> Report {
        let mut counts = Counts::default();
        for c in cases.iter().flat_map(|c| &c.stages).flat_map(|s| &s.checks) {
            match c.status {
                Status::Pass => counts.pass += 1,
                Status::Discrepancy => counts.discrepancy += 1,
                Status::Fail => counts.fail += 1,
            }
        }
        let status = cases.iter().map(|c| c.status).max().unwrap_or(Status::Pass);
        Report { command: command.to_string(), precision, versions: Versions { tool: env!("CARGO_PKG_VERSION").to_string(), data: data_version }, status, counts, cases }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "canmod {} {} (precision {})", self.versions.tool, self.command, self.precision);
        for c in &self.cases {
            let _ = writeln!(out, "\ncase {}: {}", c.case, c.status.label());
            for s in &c.stages {
                let t = s.millis.map(|m| format!(" ({m} ms)")).unwrap_or_default();
                let _ = writeln!(out, "  [{}] {}{t}", s.stage, s.status.label());
                for f in &s.facts {
                    let _ = writeln!(out, "      {} = {}", f.name, f.value);
                }
                for k in &s.checks {
                    let _ = write!(out, "    {:<11} {}", k.status.label(), k.summary);
                    if let Some(e) = &k.expected {
                        if *e != k.computed {
                            let _ = write!(out, " (expected {e})");
                        }
                    }
                    if let Some(cit) = &k.citation {
                        let _ = write!(out, " [{cit}]");
                    }
                    out.push('\n');
                    if let Some(d) = &k.details {
                        let _ = writeln!(out, "                {d}");
                    }
                }
            }
        }
        let _ = writeln!(out, "\n{}: {} passed, {} discrepancies, {} failed", self.status.label(), self.counts.pass, self.counts.discrepancy, self.counts.fail);
        out
    }
}
