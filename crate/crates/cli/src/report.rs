//! Verification records and their human and machine renderings.
//!
//! The machine format is a JSON array holding one record object per line:
//!
//! ```text
//! [
//! {"claim_id":"step4.n_factorial","inputs":{"power":1},"outputs":{...},"verdict":"pass","millis":0},
//! ...
//! ]
//! ```
//!
//! An empty stream renders as `[]`.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Version of the record layout documented in the README.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub claim_id: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub verdict: Verdict,
    pub millis: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Accumulates inputs and outputs for one record and times it from creation.
pub struct Recorder {
    claim_id: String,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    start: Instant,
}

impl Recorder {
    pub fn new(claim_id: impl Into<String>) -> Self {
        Self {
            claim_id: claim_id.into(),
            inputs: Map::new(),
            outputs: Map::new(),
            start: Instant::now(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn finish(self, ok: bool) -> Report {
        Report {
            claim_id: self.claim_id,
            inputs: self.inputs,
            outputs: self.outputs,
            verdict: Verdict::from_bool(ok),
            millis: self.start.elapsed().as_millis() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Machine,
}

/// Orders records by claim id, keeping generation order among equal ids.
pub fn sort_reports(reports: &mut [Report]) {
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
}

/// `true` when every record passed (vacuously for an empty stream).
pub fn all_passed(reports: &[Report]) -> bool {
    reports.iter().all(Report::passed)
}

fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_map(m: &Map<String, Value>) -> String {
    m.iter()
        .map(|(k, v)| format!("{k}={}", render_value(v)))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn emit(reports: &[Report], format: Format) -> String {
    match format {
        Format::Machine => emit_machine(reports),
        Format::Human => emit_human(reports),
    }
}

pub fn emit_machine(reports: &[Report]) -> String {
    if reports.is_empty() {
        return "[]\n".to_string();
    }
    let lines: Vec<String> = reports
        .iter()
        .map(|r| serde_json::to_string(r).expect("records serialize"))
        .collect();
    format!("[\n{}\n]\n", lines.join(",\n"))
}

pub fn parse_machine(text: &str) -> serde_json::Result<Vec<Report>> {
    serde_json::from_str(text)
}

pub fn emit_human(reports: &[Report]) -> String {
    let header = ["CLAIM", "VERDICT", "MS", "INPUTS", "OUTPUTS"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.claim_id.clone(),
                r.verdict.as_str().to_uppercase(),
                r.millis.to_string(),
                render_map(&r.inputs),
                render_map(&r.outputs),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 5]| {
        let mut s = String::new();
        for (k, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if k == 4 {
                s.push_str(cell);
            } else if k == 2 {
                let _ = write!(s, "{cell:>w$}  ");
            } else {
                let _ = write!(s, "{cell:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header);
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3], &row[4]]);
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{passed}/{} passed", reports.len());
    out
}
