use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cert::Thresholds;
use crate::error::{Error, Result};
use crate::rng::GENERATOR_ID;

/// Bumped whenever a CSV column or record field changes.
pub const SCHEMA_VERSION: u32 = 1;
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One self-describing result line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub schema: u32,
    pub command: String,
    pub n: Option<usize>,
    pub p: Option<f64>,
    pub seed: Option<u64>,
    pub profile: Option<String>,
    pub thresholds: Option<Thresholds>,
    /// Flags that reproduce `payload`.
    pub rerun: String,
    pub payload: serde_json::Value,
    pub wall_ms: f64,
    pub generator: String,
    pub version: String,
}

impl ExperimentRecord {
    pub fn new<T: Serialize>(command: &str, rerun: String, payload: &T) -> Result<Self> {
        Ok(ExperimentRecord {
            schema: SCHEMA_VERSION,
            command: command.into(),
            n: None,
            p: None,
            seed: None,
            profile: None,
            thresholds: None,
            rerun,
            payload: serde_json::to_value(payload).map_err(json_err)?,
            wall_ms: 0.0,
            generator: GENERATOR_ID.into(),
            version: TOOLKIT_VERSION.into(),
        })
    }

    pub fn graph(mut self, n: usize, p: f64, seed: u64) -> Self {
        self.n = Some(n);
        self.p = Some(p);
        self.seed = Some(seed);
        self
    }

    pub fn thresholds(mut self, thr: &Thresholds) -> Self {
        self.profile = Some(thr.profile.name.clone());
        self.thresholds = Some(thr.clone());
        self
    }

    pub fn to_line(&self) -> Result<String> {
        serde_json::to_string(self).map_err(json_err)
    }

    pub fn from_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(json_err)
    }
}

pub(crate) fn json_err(e: serde_json::Error) -> Error {
    Error::Domain(format!("json: {e}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::Domain(format!("unknown format `{other}` (csv or jsonl)"))),
        }
    }
}

/// Writes flat `rows` as CSV, or the matching `records` as JSON lines.
pub fn write_rows<T: Serialize, W: Write>(
    rows: &[T],
    records: &[ExperimentRecord],
    format: Format,
    out: W,
) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row).map_err(|e| Error::Io(e.into()))?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            let mut out = out;
            for r in records {
                writeln!(out, "{}", r.to_line()?)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
