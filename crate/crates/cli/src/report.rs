use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use cyclic_qm::{Dim, Error, LatticeScales};

/// A message and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    pub fn runtime(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidDim(_) | Error::Domain(_) | Error::DimMismatch { .. } => {
                Failure::usage(e.to_string())
            }
            _ => Failure::runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

pub fn dim(n: usize) -> Result<Dim, Failure> {
    Dim::new(n).map_err(|_| Failure::usage(format!("--dim must be at least 2, got {n}")))
}

pub fn scales(dim: Dim, scale_a: Option<f64>) -> Result<LatticeScales, Failure> {
    match scale_a {
        None => Ok(LatticeScales::symmetric(dim)),
        Some(a) => LatticeScales::with_position_constant(dim, a)
            .map_err(|e| Failure::usage(format!("--scale-a: {e}"))),
    }
}

/// Whether a check bounds its measurement from above or from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtMost,
    Exceeds,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalesInfo {
    pub n: usize,
    pub a: f64,
    pub g: f64,
}

impl From<&LatticeScales> for ScalesInfo {
    fn from(s: &LatticeScales) -> Self {
        ScalesInfo {
            n: s.dim().n(),
            a: s.a(),
            g: s.g(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub dims: Vec<usize>,
    pub scales: Vec<ScalesInfo>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub wall_time_s: f64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

/// Collects checks while a command runs.
pub struct ReportBuilder {
    command: String,
    dims: Vec<usize>,
    scales: Vec<ScalesInfo>,
    checks: Vec<Check>,
    tol: Option<f64>,
    start: Instant,
}

impl ReportBuilder {
    pub fn scale(&mut self, s: &LatticeScales) {
        self.dims.push(s.dim().n());
        self.scales.push(s.into());
    }

    pub fn dim(&mut self, n: usize) {
        self.dims.push(n);
    }

    /// Passes when `measured ≤ threshold`; `--tol` overrides the threshold.
    pub fn at_most(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        let threshold = self.tol.unwrap_or(threshold);
        self.push(
            name.into(),
            measured,
            threshold,
            Bound::AtMost,
            measured <= threshold,
        );
    }

    /// Passes when `measured > threshold`.
    pub fn exceeds(&mut self, name: impl Into<String>, measured: f64, threshold: f64) {
        let threshold = self.tol.unwrap_or(threshold);
        self.push(
            name.into(),
            measured,
            threshold,
            Bound::Exceeds,
            measured > threshold,
        );
    }

    fn push(&mut self, name: String, measured: f64, threshold: f64, bound: Bound, pass: bool) {
        self.checks.push(Check {
            name,
            measured,
            threshold,
            bound,
            pass,
        });
    }

    pub fn finish(self, details: serde_json::Value) -> RunReport {
        let pass = self.checks.iter().all(|c| c.pass);
        RunReport {
            command: self.command,
            dims: self.dims,
            scales: self.scales,
            checks: self.checks,
            pass,
            wall_time_s: self.start.elapsed().as_secs_f64(),
            details,
        }
    }
}

/// Where reports and tables go.
pub struct Output {
    json: Option<PathBuf>,
    csv: Option<PathBuf>,
    tol: Option<f64>,
}

impl Output {
    pub fn new(json: Option<PathBuf>, csv: Option<PathBuf>, tol: Option<f64>) -> Self {
        Output { json, csv, tol }
    }

    pub fn report(&self, command: &str) -> ReportBuilder {
        ReportBuilder {
            command: command.to_string(),
            dims: Vec::new(),
            scales: Vec::new(),
            checks: Vec::new(),
            tol: self.tol,
            start: Instant::now(),
        }
    }

    /// JSON to `--json` if given, else stdout.
    pub fn emit_json<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        match &self.json {
            Some(path) => {
                let mut f = File::create(path)?;
                serde_json::to_writer_pretty(&mut f, value)?;
                writeln!(f)?;
            }
            None => {
                let mut out = io::stdout().lock();
                serde_json::to_writer_pretty(&mut out, value)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }

    /// JSON to `--json` only.
    pub fn emit_json_file<T: Serialize>(&self, value: &T) -> Result<(), Failure> {
        if self.json.is_some() {
            self.emit_json(value)?;
        }
        Ok(())
    }

    /// Rows to `--csv` if given; to stdout when `fallback_stdout`.
    pub fn emit_csv<R: Serialize>(&self, rows: &[R], fallback_stdout: bool) -> Result<(), Failure> {
        let sink: Box<dyn Write> = match (&self.csv, fallback_stdout) {
            (Some(path), _) => Box::new(File::create(path)?),
            (None, true) => Box::new(io::stdout().lock()),
            (None, false) => return Ok(()),
        };
        let mut w = csv::Writer::from_writer(sink);
        for row in rows {
            w.serialize(row)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn emit_report(&self, report: &RunReport) -> Result<ExitCode, Failure> {
        self.emit_json(report)?;
        Ok(exit_for(report.pass))
    }
}

pub fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
