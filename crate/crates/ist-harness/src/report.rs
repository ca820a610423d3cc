//! Experiment reports as `key = value` text, plus the artifact files written beside them.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::config::ExperimentId;
use crate::error::{HarnessError, Result};

/// Threshold attached to a metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Check {
    AtMost(f64),
    Within(f64, f64),
    /// Passes when the value is finite.
    Finite,
    /// Recorded only.
    Record,
}

impl Check {
    pub fn passes(&self, v: f64) -> bool {
        match *self {
            Check::AtMost(b) => v <= b,
            Check::Within(lo, hi) => lo <= v && v <= hi,
            Check::Finite => v.is_finite(),
            Check::Record => true,
        }
    }

    fn render(&self) -> String {
        match *self {
            Check::AtMost(b) => format!("at_most {}", num(b)),
            Check::Within(lo, hi) => format!("within {} {}", num(lo), num(hi)),
            Check::Finite => "finite".into(),
            Check::Record => "record".into(),
        }
    }

    fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        match parts.as_slice() {
            ["at_most", b] => Ok(Check::AtMost(parse_num(b)?)),
            ["within", lo, hi] => Ok(Check::Within(parse_num(lo)?, parse_num(hi)?)),
            ["finite"] => Ok(Check::Finite),
            ["record"] => Ok(Check::Record),
            _ => Err(HarnessError::InvalidReport(format!("bad check `{s}`"))),
        }
    }
}

/// One measured quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    /// Standard-error half-width for fitted slopes.
    pub half_width: Option<f64>,
    pub check: Check,
}

impl Metric {
    pub fn new(name: &str, value: f64, check: Check) -> Self {
        Self { name: name.into(), value, half_width: None, check }
    }

    pub fn slope(name: &str, value: f64, half_width: f64, check: Check) -> Self {
        Self { name: name.into(), value, half_width: Some(half_width), check }
    }

    pub fn passed(&self) -> bool {
        self.check.passes(self.value)
    }
}

/// Record of one run. Wall-clock time lives in a separate file so reports stay reproducible.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub experiment: ExperimentId,
    pub config: Vec<(String, String)>,
    pub metrics: Vec<Metric>,
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn parse_num(s: &str) -> Result<f64> {
    s.parse().map_err(|_| HarnessError::InvalidReport(format!("bad number `{s}`")))
}

impl ExperimentReport {
    /// Requires every declared metric of the experiment exactly once, in declared order.
    pub fn new(experiment: ExperimentId, config: Vec<(String, String)>, metrics: Vec<Metric>) -> Result<Self> {
        if metrics.is_empty() {
            return Err(HarnessError::InvalidReport("empty metric list".into()));
        }
        let mut seen = HashSet::new();
        if let Some(m) = metrics.iter().find(|m| !seen.insert(m.name.as_str())) {
            return Err(HarnessError::InvalidReport(format!("metric `{}` appears twice", m.name)));
        }
        let names: Vec<&str> = metrics.iter().map(|m| m.name.as_str()).collect();
        if names != experiment.declared_metrics() {
            return Err(HarnessError::InvalidReport(format!(
                "{experiment} declares {:?}, got {:?}",
                experiment.declared_metrics(),
                names
            )));
        }
        Ok(Self { experiment, config, metrics })
    }

    pub fn passed(&self) -> bool {
        self.metrics.iter().all(Metric::passed)
    }

    pub fn metric(&self, name: &str) -> Option<&Metric> {
        self.metrics.iter().find(|m| m.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "experiment = {}", self.experiment);
        let _ = writeln!(out, "criterion = {}", self.experiment.criterion());
        for (k, v) in &self.config {
            let _ = writeln!(out, "config.{k} = {v}");
        }
        for m in &self.metrics {
            let _ = writeln!(out, "metric.{}.value = {}", m.name, num(m.value));
            if let Some(h) = m.half_width {
                let _ = writeln!(out, "metric.{}.half_width = {}", m.name, num(h));
            }
            let _ = writeln!(out, "metric.{}.check = {}", m.name, m.check.render());
            let _ = writeln!(out, "metric.{}.pass = {}", m.name, m.passed());
        }
        let _ = writeln!(out, "pass = {}", self.passed());
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut experiment = None;
        let mut config = Vec::new();
        let mut metrics: Vec<Metric> = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line
                .split_once(" = ")
                .ok_or_else(|| HarnessError::InvalidReport(format!("line without ` = `: {line}")))?;
            if key == "experiment" {
                experiment = Some(value.parse::<ExperimentId>()?);
            } else if key == "criterion" || key == "pass" {
                continue;
            } else if let Some(k) = key.strip_prefix("config.") {
                config.push((k.to_string(), value.to_string()));
            } else if let Some(rest) = key.strip_prefix("metric.") {
                let (name, field) = rest
                    .rsplit_once('.')
                    .ok_or_else(|| HarnessError::InvalidReport(format!("bad metric key {key}")))?;
                if metrics.last().map(|m| m.name != name).unwrap_or(true) {
                    metrics.push(Metric::new(name, f64::NAN, Check::Record));
                }
                let m = metrics.last_mut().expect("pushed above");
                match field {
                    "value" => m.value = parse_num(value)?,
                    "half_width" => m.half_width = Some(parse_num(value)?),
                    "check" => m.check = Check::parse(value)?,
                    "pass" => {}
                    _ => return Err(HarnessError::InvalidReport(format!("unknown metric field {field}"))),
                }
            } else {
                return Err(HarnessError::InvalidReport(format!("unknown key {key}")));
            }
        }
        let experiment = experiment.ok_or_else(|| HarnessError::InvalidReport("missing experiment".into()))?;
        Self::new(experiment, config, metrics)
    }
}

/// A file produced by a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// Report plus artifacts, held in memory until emitted.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentOutput {
    pub report: ExperimentReport,
    pub artifacts: Vec<Artifact>,
    pub wall_clock_seconds: f64,
}

/// Writes `report.txt`, every artifact and `timing.txt` into `dir`, creating it if needed.
pub fn emit_report(out: &ExperimentOutput, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.txt"), out.report.to_text())?;
    for a in &out.artifacts {
        std::fs::write(dir.join(&a.name), &a.bytes)?;
    }
    std::fs::write(dir.join("timing.txt"), format!("wall_clock_seconds = {}\n", num(out.wall_clock_seconds)))?;
    Ok(())
}

/// Writes a structured error record for a failed run.
pub fn emit_error(experiment: &str, err: &HarnessError, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let text = format!("experiment = {experiment}\nstatus = error\nmessage = {err}\n");
    std::fs::write(dir.join("error.txt"), text)?;
    Ok(())
}
