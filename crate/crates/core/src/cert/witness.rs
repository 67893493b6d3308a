//! Constructive covering clique inside a significant set.
//!
//! Follows the construction step by step: a set `B` of `r` outside vertices
//! that must be covered explicitly, disjoint sets `Z_1..Z_r` of their
//! non-neighbors, random sets `Z_{r+1}..Z_k` that every other outside vertex
//! sees sparsely, then a clique with one vertex in each `Z_i` whose members
//! leave no outside vertex fully adjacent. Coverage is checked exhaustively.

use serde::Serialize;
use thiserror::Error;

use super::lemmas::{is_significant, SignificanceReport};
use super::profile::Thresholds;
use crate::bitset::VertexSet;
use crate::cliques::SearchEffort;
use crate::error::Result;
use crate::graph::Graph;
use crate::rng::RngHandle;

/// Effort used by the campaign and the refuter for the transversal search.
pub const WITNESS_EFFORT: SearchEffort = SearchEffort {
    restarts: 8,
    nodes: 2_000_000,
};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CliqueWitness {
    pub n: usize,
    pub y: VertexSet,
    /// `clique[i]` is the member drawn from `z_sets[i]`.
    pub clique: Vec<usize>,
    /// `(v, u)`: outside vertex `v` and a clique member `u` it is not adjacent to.
    pub coverage: Vec<(usize, usize)>,
    pub b: Vec<usize>,
    pub z_sets: Vec<Vec<usize>>,
    pub k: usize,
    pub r: usize,
    pub m: usize,
    pub profile: String,
    pub seed: u64,
    pub stage3_attempts: u32,
    pub search_nodes: u64,
    pub transversals_examined: u64,
}

impl CliqueWitness {
    pub fn clique_set(&self) -> VertexSet {
        VertexSet::from_vertices(self.n, self.clique.iter().copied())
    }

    /// Re-checks every structural claim against `g`.
    pub fn audit(&self, g: &Graph) -> std::result::Result<(), String> {
        if g.n() != self.n || self.y.universe() != self.n {
            return Err("size mismatch".into());
        }
        if self.z_sets.len() != self.k || self.clique.len() != self.k || self.b.len() != self.r {
            return Err("wrong number of Z-sets, clique members or B-vertices".into());
        }
        let mut seen = VertexSet::empty(self.n);
        for (i, z) in self.z_sets.iter().enumerate() {
            if z.len() != self.m {
                return Err(format!("Z_{} has {} vertices, expected {}", i + 1, z.len(), self.m));
            }
            for &u in z {
                if !self.y.contains(u) {
                    return Err(format!("Z_{} contains {u} outside Y", i + 1));
                }
                if !seen.insert(u) {
                    return Err(format!("Z-sets overlap at {u}"));
                }
            }
            if !z.contains(&self.clique[i]) {
                return Err(format!("clique member {} not in Z_{}", self.clique[i], i + 1));
            }
        }
        for (i, &b) in self.b.iter().enumerate() {
            if self.y.contains(b) {
                return Err(format!("B-vertex {b} lies in Y"));
            }
            if let Some(&u) = self.z_sets[i].iter().find(|&&u| g.has_edge(u, b)) {
                return Err(format!("Z_{} member {u} is adjacent to its B-vertex {b}", i + 1));
            }
        }
        if let Some((u, v)) = g.clique_violation(&self.clique_set()) {
            return Err(format!("clique misses edge {u}-{v}"));
        }
        let outside = self.y.complement();
        if self.coverage.len() != outside.len() {
            return Err(format!(
                "coverage has {} entries for {} outside vertices",
                self.coverage.len(),
                outside.len()
            ));
        }
        for (&(v, u), w) in self.coverage.iter().zip(outside.iter()) {
            if v != w {
                return Err(format!("coverage entry for {v}, expected {w}"));
            }
            if !self.clique.contains(&u) || g.has_edge(u, v) {
                return Err(format!("coverage entry ({v}, {u}) is not a non-edge into the clique"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Error)]
#[serde(tag = "stage", rename_all = "snake_case")]
pub enum ConstructionFailure {
    #[error("set is not significant (min non-neighbors {min_nonneighbors}, {bad} bad vertices)")]
    NotSignificant { min_nonneighbors: usize, bad: usize },
    #[error("{bad} bad vertices but r = {r} with {outside} outside vertices")]
    BSelection { bad: usize, r: usize, outside: usize },
    #[error("need {needed} vertices of Y for the Z-sets, only {available}")]
    InsufficientRoom { needed: usize, available: usize },
    #[error("B-vertex {vertex} has {available} unused non-neighbors in Y, needs {needed}")]
    InsufficientNonNeighbors {
        vertex: usize,
        available: usize,
        needed: usize,
    },
    #[error("no acceptable random Z-sets in {attempts} attempts")]
    RejectionCap { attempts: u32 },
    #[error("no transversal clique found ({nodes} nodes, exhausted: {exhausted})")]
    TransversalSearch { nodes: u64, exhausted: bool },
    #[error("{transversals} transversal cliques, best leaves {best_uncovered} outside vertices uncovered")]
    Coverage {
        transversals: u64,
        best_uncovered: usize,
        exhausted: bool,
    },
}

impl ConstructionFailure {
    pub fn stage(&self) -> &'static str {
        match self {
            ConstructionFailure::NotSignificant { .. } => "significance",
            ConstructionFailure::BSelection { .. } => "b_selection",
            ConstructionFailure::InsufficientRoom { .. } => "room",
            ConstructionFailure::InsufficientNonNeighbors { .. } => "z_carving",
            ConstructionFailure::RejectionCap { .. } => "rejection_sampling",
            ConstructionFailure::TransversalSearch { .. } => "transversal_search",
            ConstructionFailure::Coverage { .. } => "coverage",
        }
    }
}

/// Builds a clique of size `k` inside `y` with a non-neighbor of every
/// vertex outside `y`. Input errors (improper `y`) are `Err`; a failed stage
/// is `Ok(Err(_))`.
pub fn construct_covering_clique(
    g: &Graph,
    y: &VertexSet,
    thr: &Thresholds,
    rng: &mut RngHandle,
    effort: SearchEffort,
) -> Result<std::result::Result<CliqueWitness, ConstructionFailure>> {
    let report = is_significant(g, y, thr)?;
    Ok(construct_checked(g, y, thr, &report, rng, effort))
}

fn construct_checked(
    g: &Graph,
    y: &VertexSet,
    thr: &Thresholds,
    report: &SignificanceReport,
    rng: &mut RngHandle,
    effort: SearchEffort,
) -> std::result::Result<CliqueWitness, ConstructionFailure> {
    use ConstructionFailure::*;
    if !report.significant() {
        return Err(NotSignificant {
            min_nonneighbors: report.min_nonneighbors,
            bad: report.bad_vertices.len(),
        });
    }
    let n = g.n();
    let (k, r) = (thr.k, thr.r);
    let m = thr.m_for(y.len());
    let outside = y.complement();
    if m == 0 || k * m > y.len() {
        return Err(InsufficientRoom {
            needed: (k * m).max(k),
            available: y.len(),
        });
    }

    // Stage 1: all bad vertices, padded by fewest non-neighbors in Y.
    let bad = &report.bad_vertices;
    if bad.len() > r || outside.len() < r {
        return Err(BSelection {
            bad: bad.len(),
            r,
            outside: outside.len(),
        });
    }
    let mut b = bad.to_vec();
    let mut rest: Vec<(usize, usize)> = outside
        .difference(bad)
        .iter()
        .map(|v| (y.len() - g.neighbors_in(v, y), v))
        .collect();
    rest.sort_unstable();
    b.extend(rest.iter().take(r - b.len()).map(|&(_, v)| v));
    b.sort_unstable();

    // Stage 2: Z_i = the m smallest unused non-neighbors of b_i in Y.
    let mut used = VertexSet::empty(n);
    let mut z_sets: Vec<Vec<usize>> = Vec::with_capacity(k);
    for &v in &b {
        let mut avail = y.difference(&g.neighbors(v));
        avail.difference_with(&used);
        if avail.len() < m {
            return Err(InsufficientNonNeighbors {
                vertex: v,
                available: avail.len(),
                needed: m,
            });
        }
        let z: Vec<usize> = avail.iter().take(m).collect();
        for &u in &z {
            used.insert(u);
        }
        z_sets.push(z);
    }

    // Stage 3: random Z_{r+1}..Z_k from Y' with enough non-neighbors of every other outside vertex.
    let y_rest = y.difference(&used).to_vec();
    let s = k - r;
    if s * m > y_rest.len() {
        return Err(InsufficientRoom {
            needed: k * m,
            available: y.len(),
        });
    }
    let mut others = outside.clone();
    for &v in &b {
        others.remove(v);
    }
    let hit = thr.z_hit_min(m);
    let mut attempts = 0;
    let random_sets = loop {
        if attempts == thr.profile.stage3_retries {
            return Err(RejectionCap { attempts });
        }
        attempts += 1;
        let draw = rng.sample(&y_rest, s * m);
        let sets: Vec<VertexSet> = draw
            .chunks(m)
            .map(|c| VertexSet::from_vertices(n, c.iter().copied()))
            .collect();
        let ok = others
            .iter()
            .all(|v| sets.iter().all(|z| m - g.neighbors_in(v, z) >= hit));
        if ok {
            break sets;
        }
    };
    z_sets.extend(random_sets.iter().map(|z| z.to_vec()));

    // Stages 4 and 5: transversal clique whose common neighborhood avoids V - Y.
    let search = transversal_search(g, &z_sets, &outside, rng, effort);
    let Some(clique) = search.found else {
        return Err(if search.transversals == 0 {
            TransversalSearch {
                nodes: search.nodes,
                exhausted: search.exhausted,
            }
        } else {
            Coverage {
                transversals: search.transversals,
                best_uncovered: search.best_uncovered,
                exhausted: search.exhausted,
            }
        });
    };
    let coverage = outside
        .iter()
        .map(|v| {
            let u = *clique
                .iter()
                .find(|&&u| !g.has_edge(u, v))
                .expect("search checked coverage");
            (v, u)
        })
        .collect();
    Ok(CliqueWitness {
        n,
        y: y.clone(),
        clique,
        coverage,
        b,
        z_sets,
        k,
        r,
        m,
        profile: thr.profile.name.clone(),
        seed: rng.seed(),
        stage3_attempts: attempts,
        search_nodes: search.nodes,
        transversals_examined: search.transversals,
    })
}

struct SearchOutcome {
    found: Option<Vec<usize>>,
    nodes: u64,
    transversals: u64,
    best_uncovered: usize,
    exhausted: bool,
}

struct Search<'a> {
    g: &'a Graph,
    zs: Vec<VertexSet>,
    order: Vec<Vec<usize>>,
    outside: &'a VertexSet,
    chosen: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
    transversals: u64,
    best_uncovered: usize,
}

impl Search<'_> {
    /// `Some(true)` on success, `Some(false)` when the subtree is exhausted,
    /// `None` when the node budget ran out.
    fn dfs(&mut self, common: &VertexSet, depth: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        if depth == self.zs.len() {
            self.transversals += 1;
            let uncovered = common.intersection_len(self.outside);
            self.best_uncovered = self.best_uncovered.min(uncovered);
            return Some(uncovered == 0);
        }
        // fail-first: the open Z-set with the fewest candidates left
        let (i, count) = (0..self.zs.len())
            .filter(|&i| self.chosen[i].is_none())
            .map(|i| (i, self.zs[i].intersection_len(common)))
            .min_by_key(|&(i, c)| (c, i))
            .expect("depth < k");
        if count == 0 {
            return Some(false);
        }
        for j in 0..self.order[i].len() {
            let u = self.order[i][j];
            if !common.contains(u) {
                continue;
            }
            self.chosen[i] = Some(u);
            let next = common.intersect_words(self.g.row(u));
            let res = self.dfs(&next, depth + 1);
            if res != Some(false) {
                return res;
            }
        }
        self.chosen[i] = None;
        Some(false)
    }
}

fn transversal_search(
    g: &Graph,
    z_sets: &[Vec<usize>],
    outside: &VertexSet,
    rng: &mut RngHandle,
    effort: SearchEffort,
) -> SearchOutcome {
    let n = g.n();
    let restarts = effort.restarts.max(1) as u64;
    let mut search = Search {
        g,
        zs: z_sets
            .iter()
            .map(|z| VertexSet::from_vertices(n, z.iter().copied()))
            .collect(),
        order: Vec::new(),
        outside,
        chosen: vec![None; z_sets.len()],
        nodes: 0,
        budget: 0,
        transversals: 0,
        best_uncovered: outside.len(),
    };
    let mut total_nodes = 0;
    for _ in 0..restarts {
        search.order = z_sets
            .iter()
            .map(|z| {
                let mut o = z.clone();
                rng.shuffle(&mut o);
                o
            })
            .collect();
        search.chosen.iter_mut().for_each(|c| *c = None);
        search.nodes = 0;
        search.budget = effort.nodes / restarts;
        let res = search.dfs(&VertexSet::full(n), 0);
        total_nodes += search.nodes.min(search.budget);
        match res {
            Some(true) => {
                let clique = search.chosen.iter().map(|c| c.expect("leaf")).collect();
                return SearchOutcome {
                    found: Some(clique),
                    nodes: total_nodes,
                    transversals: search.transversals,
                    best_uncovered: 0,
                    exhausted: false,
                };
            }
            Some(false) => {
                return SearchOutcome {
                    found: None,
                    nodes: total_nodes,
                    transversals: search.transversals,
                    best_uncovered: search.best_uncovered,
                    exhausted: true,
                }
            }
            None => {}
        }
    }
    SearchOutcome {
        found: None,
        nodes: total_nodes,
        transversals: search.transversals,
        best_uncovered: search.best_uncovered,
        exhausted: false,
    }
}
