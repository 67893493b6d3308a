//! Campaign drivers behind the `cliquechrom` binary: parameter sweeps,
//! certificate campaigns, bound tables, and the record format they share.
//!
//! Every cell derives its seed as `mix_seed([base_seed, n, index])`, so a
//! cell can be recomputed on its own and results do not depend on `--jobs`.

pub mod certify;
pub mod record;
pub mod sweep;

use serde::Serialize;

pub use certify::{run_certify, CampaignSummary, CertifyConfig, CertifyRow, SeedResult};
pub use record::{write_rows, ExperimentRecord, Format, SCHEMA_VERSION, TOOLKIT_VERSION};
pub use sweep::{
    run_cell, run_cell_with_coloring, run_sweep, summarize, SweepCell, SweepConfig, SweepMode, SweepSummary,
};

use crate::bounds::{
    coefficient_report, janson_report, lemma21_bounds, lemma22_bounds, BoundLine, BoundReport, JansonReport,
};
use crate::cert::ParameterProfile;
use crate::error::{Error, Result};
use crate::rng::mix_seed;

pub fn cell_seed(base_seed: u64, n: usize, index: usize) -> u64 {
    mix_seed(&[base_seed, n as u64, index as u64])
}

pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const INVALID: i32 = 4;
}

/// Process exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } | Error::CliqueCapTruncated(_) => exit::BUDGET,
        _ => exit::INPUT,
    }
}

/// Flat row of a bound table (one CSV line).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub schema: u32,
    pub table: String,
    #[serde(rename = "L")]
    pub l: f64,
    pub expression: String,
    pub log2_value: String,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsOutput {
    pub profile: String,
    pub reports: Vec<BoundReport>,
    pub janson: Vec<JansonReport>,
    /// Smallest `L` at which `mu >= n^10`.
    pub crossover: Option<f64>,
    /// `(p, 1 / log2(1/p))`.
    pub coefficients: Vec<(f64, f64)>,
}

impl BoundsOutput {
    pub fn rows(&self) -> Vec<BoundRow> {
        let mut rows = Vec::new();
        for rep in &self.reports {
            for BoundLine {
                expression,
                log2_value,
                verdict,
            } in &rep.lines
            {
                rows.push(BoundRow {
                    schema: SCHEMA_VERSION,
                    table: rep.title.clone(),
                    l: rep.l,
                    expression: expression.clone(),
                    log2_value: log2_value.to_string(),
                    verdict: verdict.map(|v| v.to_string()).unwrap_or_default(),
                });
            }
        }
        for &(p, c) in &self.coefficients {
            rows.push(BoundRow {
                schema: SCHEMA_VERSION,
                table: "edge probability".into(),
                l: f64::NAN,
                expression: format!("coefficient 1/log2(1/p) at p={p}"),
                log2_value: c.log2().to_string(),
                verdict: String::new(),
            });
        }
        rows
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for rep in &self.reports {
            s += &rep.to_table();
            s.push('\n');
        }
        if let Some(c) = self.crossover {
            s += &format!("crossover L* for mu >= n^10: {c:.4}\n");
        }
        for &(p, c) in &self.coefficients {
            s += &format!("p = {p}: lower-bound coefficient {c:.6}\n");
        }
        s
    }
}

/// Every table at each `L`, plus the edge-probability coefficients.
pub fn run_bounds(ls: &[f64], ps: &[f64], profile: &ParameterProfile) -> Result<BoundsOutput> {
    if let Some(&l) = ls.iter().find(|&&l| !(l >= 2.0 && l.is_finite())) {
        return Err(Error::Domain(format!("L = {l} must be a finite value >= 2")));
    }
    let mut reports = Vec::new();
    let mut janson = Vec::new();
    for &l in ls {
        reports.push(lemma21_bounds(l, profile).report(profile));
        reports.push(lemma22_bounds(l, profile).report(profile));
        let j = janson_report(l, profile);
        reports.push(j.report(profile));
        janson.push(j);
    }
    Ok(BoundsOutput {
        profile: profile.name.clone(),
        reports,
        crossover: janson.first().map(|j| j.crossover),
        janson,
        coefficients: coefficient_report(ps)?,
    })
}
