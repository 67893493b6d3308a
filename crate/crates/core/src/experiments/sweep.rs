use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cell_seed;
use super::record::SCHEMA_VERSION;
use crate::cliques::DEFAULT_CLIQUE_CAP;
use crate::coloring::{
    chi_c_bruteforce, chi_c_exact, greedy_clique_coloring, verify_coloring, Coloring, ExactLimits, ExactStatus,
    BRUTE_FORCE_MAX_N,
};
use crate::error::{Error, Result};
use crate::graph::gen_gnp;
use crate::rng::RngHandle;

/// Largest `n` accepted by an exact sweep.
pub const EXACT_SWEEP_MAX_N: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepMode {
    Exact,
    Heuristic,
    Brute,
}

impl SweepMode {
    pub fn name(self) -> &'static str {
        match self {
            SweepMode::Exact => "exact",
            SweepMode::Heuristic => "heuristic",
            SweepMode::Brute => "brute",
        }
    }
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(SweepMode::Exact),
            "heuristic" => Ok(SweepMode::Heuristic),
            "brute" => Ok(SweepMode::Brute),
            other => Err(Error::Domain(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub seeds: usize,
    pub p: f64,
    pub mode: SweepMode,
    pub base_seed: u64,
    pub clique_cap: u64,
    pub node_budget: u64,
    /// Greedy runs per cell in heuristic mode; the best is kept.
    pub restarts: u32,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            ns: vec![32, 64, 128, 256],
            seeds: 20,
            p: 0.5,
            mode: SweepMode::Heuristic,
            base_seed: 0,
            clique_cap: DEFAULT_CLIQUE_CAP,
            node_budget: 5_000_000,
            restarts: 1,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() || self.seeds == 0 {
            return Err(Error::Domain("empty grid".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidProbability(self.p));
        }
        if self.ns.contains(&0) {
            return Err(Error::EmptyGraph);
        }
        let max = self.ns.iter().copied().max().unwrap_or(0);
        let limit = match self.mode {
            SweepMode::Exact => EXACT_SWEEP_MAX_N,
            SweepMode::Brute => BRUTE_FORCE_MAX_N,
            SweepMode::Heuristic => usize::MAX,
        };
        if max > limit {
            return Err(Error::CapExceeded {
                what: "vertex count for this sweep mode",
                limit: limit as u64,
            });
        }
        Ok(())
    }

    /// Command-line flags that reproduce this sweep.
    pub fn rerun(&self) -> String {
        let ns: Vec<String> = self.ns.iter().map(|n| n.to_string()).collect();
        format!(
            "sweep --ns {} --seeds {} -p {} --mode {} --seed {} --clique-cap {} --node-budget {} --restarts {}",
            ns.join(","),
            self.seeds,
            self.p,
            self.mode.name(),
            self.base_seed,
            self.clique_cap,
            self.node_budget,
            self.restarts
        )
    }
}

/// One `(n, index)` cell. Flat so that it maps onto one CSV row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub schema: u32,
    pub n: usize,
    pub index: usize,
    pub p: f64,
    /// `mix_seed([base_seed, n, index])`; regenerates the graph.
    pub seed: u64,
    pub mode: SweepMode,
    pub edges: usize,
    /// Proved value, or the best upper bound.
    pub chi: usize,
    pub lower: usize,
    pub upper: usize,
    pub proved: bool,
    pub valid: bool,
    pub truncated: bool,
    pub nodes: u64,
}

pub fn run_cell(cfg: &SweepConfig, n: usize, index: usize) -> Result<SweepCell> {
    run_cell_with_coloring(cfg, n, index).map(|(cell, _)| cell)
}

/// Like [`run_cell`], also returning the coloring the cell reports on.
pub fn run_cell_with_coloring(cfg: &SweepConfig, n: usize, index: usize) -> Result<(SweepCell, Coloring)> {
    let seed = cell_seed(cfg.base_seed, n, index);
    let mut rng = RngHandle::new(seed);
    let g = gen_gnp(n, cfg.p, &mut rng)?;
    let mut cell = SweepCell {
        schema: SCHEMA_VERSION,
        n,
        index,
        p: cfg.p,
        seed,
        mode: cfg.mode,
        edges: g.edge_count(),
        chi: 0,
        lower: 0,
        upper: 0,
        proved: false,
        valid: false,
        truncated: false,
        nodes: 0,
    };
    let coloring = match cfg.mode {
        SweepMode::Brute => {
            let (k, c) = chi_c_bruteforce(&g)?;
            (cell.lower, cell.upper, cell.proved) = (k, k, true);
            c
        }
        SweepMode::Exact => {
            let limits = ExactLimits {
                clique_cap: cfg.clique_cap,
                node_budget: cfg.node_budget,
                seed,
            };
            let r = chi_c_exact(&g, limits)?;
            (cell.lower, cell.upper) = match r.status {
                ExactStatus::Proved => (r.k, r.k),
                ExactStatus::LowerUpperGap { lower, upper } => (lower, upper),
            };
            cell.proved = r.proved();
            cell.truncated = r.truncated;
            cell.nodes = r.nodes;
            r.coloring
        }
        SweepMode::Heuristic => {
            let mut best = greedy_clique_coloring(&g, &mut rng)?;
            for _ in 1..cfg.restarts.max(1) {
                let c = greedy_clique_coloring(&g, &mut rng)?;
                if c.k() < best.k() {
                    best = c;
                }
            }
            cell.lower = 1;
            cell.upper = best.k();
            best
        }
    };
    cell.chi = cell.upper;
    cell.valid = verify_coloring(&g, &coloring)?.valid;
    Ok((cell, coloring))
}

/// All cells, ordered by `n` then index, computed on `jobs` threads.
pub fn run_sweep(cfg: &SweepConfig, jobs: usize) -> Result<Vec<SweepCell>> {
    cfg.validate()?;
    let tasks: Vec<(usize, usize)> = cfg
        .ns
        .iter()
        .flat_map(|&n| (0..cfg.seeds).map(move |i| (n, i)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Domain(e.to_string()))?;
    pool.install(|| tasks.par_iter().map(|&(n, i)| run_cell(cfg, n, i)).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NSummary {
    pub n: usize,
    pub log2_n: f64,
    pub samples: usize,
    pub mean: f64,
    pub min: usize,
    pub max: usize,
    /// Cells whose value is an upper bound only.
    pub unproved: usize,
    pub invalid: usize,
}

/// Least-squares fit `chi ≈ a log2 n + b` over per-`n` means.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    pub a: f64,
    pub b: f64,
    pub residuals: Vec<f64>,
    pub points: usize,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub mode: SweepMode,
    pub per_n: Vec<NSummary>,
    pub fit: Option<Fit>,
    /// Fewer than two distinct `n`; no slope is reported.
    pub underdetermined: bool,
    /// Slope conjectured for `p = 1/2`, recorded for comparison only.
    pub conjectured_slope: f64,
}

pub fn summarize(cells: &[SweepCell]) -> SweepSummary {
    let mut ns: Vec<usize> = cells.iter().map(|c| c.n).collect();
    ns.sort_unstable();
    ns.dedup();
    let per_n: Vec<NSummary> = ns
        .iter()
        .map(|&n| {
            let group: Vec<&SweepCell> = cells.iter().filter(|c| c.n == n).collect();
            let values: Vec<usize> = group.iter().map(|c| c.chi).collect();
            NSummary {
                n,
                log2_n: (n as f64).log2(),
                samples: values.len(),
                mean: values.iter().sum::<usize>() as f64 / values.len() as f64,
                min: *values.iter().min().expect("nonempty group"),
                max: *values.iter().max().expect("nonempty group"),
                unproved: group.iter().filter(|c| !c.proved).count(),
                invalid: group.iter().filter(|c| !c.valid).count(),
            }
        })
        .collect();
    let fit = least_squares(&per_n);
    SweepSummary {
        mode: cells.first().map_or(SweepMode::Heuristic, |c| c.mode),
        underdetermined: fit.is_none(),
        fit,
        per_n,
        conjectured_slope: 0.5,
    }
}

fn least_squares(points: &[NSummary]) -> Option<Fit> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.log2_n).sum::<f64>() / k;
    let my = points.iter().map(|p| p.mean).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.log2_n - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.log2_n - mx) * (p.mean - my)).sum();
    let a = sxy / sxx;
    let b = my - a * mx;
    Some(Fit {
        a,
        b,
        residuals: points.iter().map(|p| p.mean - (a * p.log2_n + b)).collect(),
        points: points.len(),
        samples: points.iter().map(|p| p.samples).sum(),
    })
}

impl SweepSummary {
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "mode {}\n{:>6} {:>8} {:>8} {:>5} {:>5} {:>8}\n",
            self.mode.name(),
            "n",
            "samples",
            "mean",
            "min",
            "max",
            "unproved"
        );
        for r in &self.per_n {
            writeln!(
                s,
                "{:>6} {:>8} {:>8.3} {:>5} {:>5} {:>8}",
                r.n, r.samples, r.mean, r.min, r.max, r.unproved
            )
            .expect("write to String");
        }
        match &self.fit {
            Some(f) => writeln!(
                s,
                "fit: chi ≈ {:.4} log2 n {:+.4} over {} points ({} samples); conjectured slope {}",
                f.a, f.b, f.points, f.samples, self.conjectured_slope
            ),
            None => writeln!(s, "fit: underdetermined (one grid point), slope omitted"),
        }
        .expect("write to String");
        s
    }

    /// Plain gnuplot script plotting the per-cell CSV against the fit.
    pub fn gnuplot_script(&self, csv_path: &str) -> String {
        let mut s = String::from("set datafile separator ','\nset key autotitle columnhead\nset logscale x 2\n");
        s += "set xlabel 'n'\nset ylabel 'chi_c'\n";
        let fit = match &self.fit {
            Some(f) => format!(", {} * log(x) / log(2) + {} title 'fit'", f.a, f.b),
            None => String::new(),
        };
        writeln!(s, "plot '{csv_path}' using 2:8 with points title 'samples'{fit}").expect("write to String");
        s
    }
}
