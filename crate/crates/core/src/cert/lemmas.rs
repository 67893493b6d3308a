//! Deterministic graph properties behind the lower bound: many vertices
//! avoid every small set, few outside vertices see a large set densely, and
//! the resulting notion of a significant set.

use serde::Serialize;

use super::profile::Thresholds;
use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngHandle;

/// How [`check_lemma21`] chooses the sets `S`.
#[derive(Clone, Debug)]
pub enum Lemma21Mode {
    /// Every `S` with `1 <= |S| <= s_max`; refuses if that is more than `budget` sets.
    Exhaustive { s_max: usize, budget: u64 },
    /// `trials` uniform sets of each size `1..=s_max`.
    Sampled { s_max: usize, trials: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma21Report {
    pub mode: &'static str,
    pub s_max: usize,
    pub sets_examined: u64,
    /// A set attaining `min_count` (first found).
    pub worst_set: Vec<usize>,
    /// Minimum over examined `S` of `|nonadjacent_to_all(S)|`.
    pub min_count: usize,
    pub threshold: usize,
    /// `min_count > threshold`.
    pub holds: bool,
}

/// Checks that every examined small `S` leaves more than
/// `thr.indep_threshold` vertices with no neighbor in `S`.
pub fn check_lemma21(g: &Graph, thr: &Thresholds, mode: Lemma21Mode) -> Result<Lemma21Report> {
    let n = g.n();
    let mut worst: Option<(usize, Vec<usize>)> = None;
    let mut examined = 0u64;
    let mut consider = |s: &[usize]| {
        let count = g.nonadjacent_to_all_count(s);
        examined += 1;
        if worst.as_ref().is_none_or(|(c, _)| count < *c) {
            worst = Some((count, s.to_vec()));
        }
    };
    let (mode_name, s_max) = match mode {
        Lemma21Mode::Exhaustive { s_max, budget } => {
            let total = (1..=s_max.min(n))
                .map(|s| binomial(n, s))
                .fold(0u64, u64::saturating_add);
            if total > budget {
                return Err(Error::CapExceeded {
                    what: "exhaustive small-set enumeration",
                    limit: budget,
                });
            }
            for size in 1..=s_max.min(n) {
                for_each_combination(n, size, &mut consider);
            }
            ("exhaustive", s_max)
        }
        Lemma21Mode::Sampled { s_max, trials, seed } => {
            let mut rng = RngHandle::new(seed);
            let all: Vec<usize> = (0..n).collect();
            for _ in 0..trials {
                for size in 1..=s_max.min(n) {
                    let mut s = rng.sample(&all, size);
                    s.sort_unstable();
                    consider(&s);
                }
            }
            ("sampled", s_max)
        }
    };
    let (min_count, worst_set) = worst.unwrap_or((n, Vec::new()));
    Ok(Lemma21Report {
        mode: mode_name,
        s_max,
        sets_examined: examined,
        worst_set,
        min_count,
        threshold: thr.indep_threshold,
        holds: min_count > thr.indep_threshold,
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `f` on each `size`-subset of `0..n` in lexicographic order.
fn for_each_combination(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        f(&idx);
        let Some(i) = (0..size).rev().find(|&i| idx[i] != i + n - size) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn check_proper(g: &Graph, y: &VertexSet) -> Result<()> {
    if y.universe() != g.n() {
        return Err(Error::SizeMismatch {
            coloring: y.universe(),
            graph: g.n(),
        });
    }
    if y.is_empty() || y.len() == g.n() {
        return Err(Error::NotProperSubset);
    }
    Ok(())
}

/// Outside vertices with at most `bad_frac * |y|` non-neighbors in `y`.
pub fn bad_vertices(g: &Graph, y: &VertexSet, thr: &Thresholds) -> VertexSet {
    let cut = thr.bad_cut(y.len());
    let mut bad = VertexSet::empty(g.n());
    for v in y.complement().iter() {
        let nn = y.len() - g.neighbors_in(v, y);
        if nn as f64 <= cut {
            bad.insert(v);
        }
    }
    bad
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma22Report {
    pub y_size: usize,
    pub bad: VertexSet,
    pub bad_cap: usize,
    /// `|bad| < bad_cap`.
    pub holds: bool,
}

pub fn check_lemma22(g: &Graph, y: &VertexSet, thr: &Thresholds) -> Result<Lemma22Report> {
    check_proper(g, y)?;
    let bad = bad_vertices(g, y, thr);
    Ok(Lemma22Report {
        y_size: y.len(),
        holds: bad.len() < thr.bad_cap,
        bad,
        bad_cap: thr.bad_cap,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignificanceReport {
    pub y_size: usize,
    /// Minimum over `v` outside `Y` of the non-neighbor count in `Y`.
    pub min_nonneighbors: usize,
    /// Lowest-index outside vertex attaining the minimum.
    pub argmin: usize,
    pub bad_vertices: VertexSet,
    pub nonneighbor_threshold: usize,
    pub bad_cut: f64,
    pub bad_cap: usize,
    pub condition1_met: bool,
    pub condition2_met: bool,
}

impl SignificanceReport {
    pub fn significant(&self) -> bool {
        self.condition1_met && self.condition2_met
    }
}

/// Evaluates both conditions of significance for `y`.
pub fn is_significant(g: &Graph, y: &VertexSet, thr: &Thresholds) -> Result<SignificanceReport> {
    check_proper(g, y)?;
    let (argmin, min_nonneighbors) = y
        .complement()
        .iter()
        .map(|v| (v, y.len() - g.neighbors_in(v, y)))
        .min_by_key(|&(v, c)| (c, v))
        .expect("y is a proper subset");
    let bad = bad_vertices(g, y, thr);
    let threshold = thr.sig_nonneighbor_for(y.len());
    Ok(SignificanceReport {
        y_size: y.len(),
        min_nonneighbors,
        argmin,
        condition1_met: min_nonneighbors >= threshold,
        condition2_met: bad.len() <= thr.bad_cap,
        bad_vertices: bad,
        nonneighbor_threshold: threshold,
        bad_cut: thr.bad_cut(y.len()),
        bad_cap: thr.bad_cap,
    })
}
