//! Report assembly and output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use super::VERSION;
use crate::checks::{CheckResult, Status};
use crate::error::{Error, Result};
use crate::metrics::config::{PointStrategy, RunConfig};
use crate::scalar::Number;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejection {
    pub point: Vec<Number>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    pub mode: String,
    pub jet_order: usize,
    pub seed: u64,
    pub strategy: String,
    pub tolerance: f64,
    pub checks: Vec<String>,
    pub metric_echo: Value,
    pub rejected: Vec<Rejection>,
}

impl Header {
    pub fn new(config: &RunConfig, checks: Vec<String>, suite: Option<&str>, rejected: Vec<Rejection>) -> Header {
        Header {
            version: VERSION.to_string(),
            suite: suite.map(str::to_string),
            mode: config.mode.as_str().to_string(),
            jet_order: config.jet_order,
            seed: config.points.seed,
            strategy: match config.points.strategy {
                PointStrategy::Grid => "grid".into(),
                PointStrategy::Random => "random".into(),
            },
            tolerance: config.tolerance,
            checks,
            metric_echo: config.metric.echo(),
            rejected,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub vacuous: usize,
    pub error: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub hypotheses_not_met: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::Vacuous => self.vacuous += 1,
            Status::Error => self.error += 1,
            Status::HypothesesNotMet => self.hypotheses_not_met += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub header: Header,
    pub rows: Vec<CheckResult>,
    pub summary: BTreeMap<String, Counts>,
}

impl Report {
    /// Summarises `rows`; every check listed in the header gets an entry.
    pub fn new(header: Header, rows: Vec<CheckResult>) -> Report {
        let mut summary: BTreeMap<String, Counts> = header.checks.iter().map(|c| (c.clone(), Counts::default())).collect();
        for r in &rows {
            summary.entry(r.name.clone()).or_default().add(r.status);
        }
        Report { header, rows, summary }
    }

    /// True iff every row passed or was vacuous.
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| matches!(r.status, Status::Pass | Status::Vacuous))
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.all_passed())
    }

    pub fn rows_named<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a CheckResult> + 'a {
        self.rows.iter().filter(move |r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(Error::config("format", format!("expected json or text, got {other:?}"))),
        }
    }
}

fn point_label(p: &[Number]) -> String {
    let parts: Vec<String> = p.iter().map(Number::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Exact values longer than this are shown as decimals in text output.
const TEXT_EXACT_WIDTH: usize = 20;

fn residual_label(n: &Number) -> String {
    let s = n.to_string();
    if s.len() > TEXT_EXACT_WIDTH {
        format!("~{:.6e}", n.to_f64())
    } else {
        s
    }
}

fn table(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let mut line = String::new();
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - cell.chars().count();
                let _ = write!(line, "{cell}{}  ", " ".repeat(pad));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

/// Aligned human-readable rendering of a report.
pub fn render_text(r: &Report) -> String {
    let h = &r.header;
    let mut out = String::new();
    let family = h.metric_echo.get("family").and_then(Value::as_str).unwrap_or("?");
    let n = h.metric_echo.get("n").and_then(Value::as_u64).unwrap_or(0);
    let _ = writeln!(out, "ppwave-check {}", h.version);
    if let Some(s) = &h.suite {
        let _ = writeln!(out, "suite: {s}");
    }
    let _ = writeln!(
        out,
        "metric: {family} (n = {n})  mode: {}  jet order: {}  points: {} (seed {})",
        h.mode, h.jet_order, h.strategy, h.seed
    );
    for rej in &h.rejected {
        let _ = writeln!(out, "rejected {}: {}", point_label(&rej.point), rej.reason);
    }
    out.push('\n');

    let mut points: Vec<&Vec<Number>> = Vec::new();
    let mut rows = vec![vec!["#".to_string(), "point".into(), "check".into(), "status".into(), "residual".into()]];
    for row in &r.rows {
        let idx = match points.iter().position(|p| *p == &row.point) {
            Some(i) => i,
            None => {
                points.push(&row.point);
                points.len() - 1
            }
        };
        rows.push(vec![
            idx.to_string(),
            point_label(&row.point),
            row.name.clone(),
            row.status.as_str().to_string(),
            residual_label(&row.residual),
        ]);
    }
    table(&mut out, &rows);
    out.push('\n');

    let mut rows = vec![vec![
        "check".to_string(),
        "pass".into(),
        "fail".into(),
        "vacuous".into(),
        "error".into(),
        "not met".into(),
    ]];
    for (name, c) in &r.summary {
        rows.push(vec![
            name.clone(),
            c.pass.to_string(),
            c.fail.to_string(),
            c.vacuous.to_string(),
            c.error.to_string(),
            c.hypotheses_not_met.to_string(),
        ]);
    }
    table(&mut out, &rows);
    let _ = writeln!(out, "\noverall: {}", if r.all_passed() { "pass" } else { "fail" });
    out
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(r: &Report, path: Option<&Path>, format: Format) -> Result<()> {
    let body = match format {
        Format::Json => r.to_json(),
        Format::Text => render_text(r),
    };
    match path {
        Some(p) => std::fs::write(p, body).map_err(|source| Error::Io { path: p.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|source| Error::Io { path: "<stdout>".into(), source })
        }
    }
}
