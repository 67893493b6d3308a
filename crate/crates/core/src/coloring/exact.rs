//! Exact clique chromatic number by branch-and-bound.
//!
//! The maximal cliques of size >= 2 are materialized as hyperedges and the
//! problem becomes weak hypergraph coloring: find `k` colors so that no
//! hyperedge is monochromatic. `k` is deepened from the trivial lower bound;
//! the heuristic coloring supplies the upper bound.
//!
//! Search: DSATUR-style vertex choice (smallest live domain, then most
//! distinct colors among co-members, then most co-members, then lowest
//! index), new colors opened only as `max_used + 1`, and one propagation
//! rule: once all but one vertex of a hyperedge carry the same color `c`,
//! `c` is removed from the last vertex's domain.

use serde::Serialize;

use super::{greedy_clique_coloring, Coloring};
use crate::bitset::VertexSet;
use crate::cliques::{maximal_cliques, DEFAULT_CLIQUE_CAP};
use crate::error::Result;
use crate::graph::Graph;
use crate::rng::RngHandle;

/// At most 64 colors: domains are `u64` masks.
const MAX_COLORS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactLimits {
    /// Maximal-clique materialization cap.
    pub clique_cap: u64,
    /// Branch-and-bound assignments across all values of `k`.
    pub node_budget: u64,
    /// Seed for the heuristic upper bound.
    pub seed: u64,
}

impl Default for ExactLimits {
    fn default() -> Self {
        ExactLimits {
            clique_cap: DEFAULT_CLIQUE_CAP,
            node_budget: 5_000_000,
            seed: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ExactStatus {
    Proved,
    /// `lower <= χ_c <= upper`; the returned coloring attains `upper`.
    LowerUpperGap {
        lower: usize,
        upper: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactResult {
    pub k: usize,
    pub coloring: Coloring,
    pub status: ExactStatus,
    pub hyperedges: usize,
    /// Enumeration hit `clique_cap`; the result is then never `Proved`.
    pub truncated: bool,
    pub nodes: u64,
}

impl ExactResult {
    pub fn proved(&self) -> bool {
        self.status == ExactStatus::Proved
    }
}

pub fn chi_c_exact(g: &Graph, limits: ExactLimits) -> Result<ExactResult> {
    let n = g.n();
    let heuristic = || greedy_clique_coloring(g, &mut RngHandle::new(limits.seed)).map(|c| c.normalized());
    let lower = if g.edge_count() > 0 { 2 } else { 1 };

    let mut hyperedges = Vec::new();
    let mut truncated = false;
    for c in maximal_cliques(g, 2).cap(limits.clique_cap) {
        match c {
            Ok(c) => hyperedges.push(c.to_vec()),
            Err(_) => truncated = true,
        }
    }
    if truncated {
        let c = heuristic()?;
        return Ok(ExactResult {
            k: c.k(),
            status: ExactStatus::LowerUpperGap { lower, upper: c.k() },
            coloring: c,
            hyperedges: hyperedges.len(),
            truncated,
            nodes: 0,
        });
    }
    if hyperedges.is_empty() {
        return Ok(ExactResult {
            k: 1,
            coloring: Coloring::monochrome(n),
            status: ExactStatus::Proved,
            hyperedges: 0,
            truncated,
            nodes: 0,
        });
    }

    let upper_coloring = heuristic()?;
    let upper = upper_coloring.k();
    let mut budget = limits.node_budget;
    for k in lower..upper {
        let outcome = weak_coloring(n, &hyperedges, k, &mut budget);
        let nodes = limits.node_budget - budget;
        match outcome {
            WeakSearch::Found(colors) => {
                return Ok(ExactResult {
                    k,
                    coloring: Coloring::new(colors, k)?,
                    status: ExactStatus::Proved,
                    hyperedges: hyperedges.len(),
                    truncated,
                    nodes,
                })
            }
            WeakSearch::Infeasible => continue,
            WeakSearch::BudgetExhausted => {
                return Ok(ExactResult {
                    k: upper,
                    coloring: upper_coloring,
                    status: ExactStatus::LowerUpperGap { lower: k, upper },
                    hyperedges: hyperedges.len(),
                    truncated,
                    nodes,
                });
            }
        }
    }
    Ok(ExactResult {
        k: upper,
        coloring: upper_coloring,
        status: ExactStatus::Proved,
        hyperedges: hyperedges.len(),
        truncated,
        nodes: limits.node_budget - budget,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakSearch {
    Found(Vec<usize>),
    Infeasible,
    BudgetExhausted,
}

/// Weak `k`-coloring of a hypergraph on `0..n`: no hyperedge monochromatic.
/// Each assignment costs one unit of `budget`.
pub fn weak_coloring(n: usize, hyperedges: &[Vec<usize>], k: usize, budget: &mut u64) -> WeakSearch {
    assert!(k <= MAX_COLORS, "at most {MAX_COLORS} colors");
    if hyperedges.iter().any(|e| e.len() < 2) {
        // a singleton hyperedge is monochromatic under every coloring
        return WeakSearch::Infeasible;
    }
    if k == 0 {
        return if n == 0 {
            WeakSearch::Found(Vec::new())
        } else {
            WeakSearch::Infeasible
        };
    }
    let mut search = Search::new(n, hyperedges, k);
    match search.run(budget) {
        Some(true) => {
            let colors = search.color.iter().map(|c| c.map_or(0, usize::from)).collect();
            WeakSearch::Found(colors)
        }
        Some(false) => WeakSearch::Infeasible,
        None => WeakSearch::BudgetExhausted,
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EdgeColor {
    Unset,
    Mono(u8),
    Mixed,
}

#[derive(Clone, Copy)]
struct EdgeState {
    assigned: usize,
    color: EdgeColor,
}

enum Undo {
    Domain(usize, u64),
    Edge(usize, EdgeState),
    Color(usize),
}

struct Search<'a> {
    k: usize,
    edges: &'a [Vec<usize>],
    incidence: Vec<Vec<usize>>,
    comembers: Vec<VertexSet>,
    color: Vec<Option<u8>>,
    domain: Vec<u64>,
    edge_state: Vec<EdgeState>,
    trail: Vec<Undo>,
    todo: usize,
}

impl<'a> Search<'a> {
    fn new(n: usize, edges: &'a [Vec<usize>], k: usize) -> Self {
        let mut incidence = vec![Vec::new(); n];
        let mut comembers = vec![VertexSet::empty(n); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v].push(i);
                for &u in e {
                    if u != v {
                        comembers[v].insert(u);
                    }
                }
            }
        }
        let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        let todo = incidence.iter().filter(|inc| !inc.is_empty()).count();
        Search {
            k,
            edges,
            incidence,
            comembers,
            color: vec![None; n],
            domain: vec![full; n],
            edge_state: vec![
                EdgeState {
                    assigned: 0,
                    color: EdgeColor::Unset
                };
                edges.len()
            ],
            trail: Vec::new(),
            todo,
        }
    }

    /// `Some(found)` on completion, `None` on budget exhaustion.
    fn run(&mut self, budget: &mut u64) -> Option<bool> {
        self.branch(0, budget)
    }

    fn branch(&mut self, used: usize, budget: &mut u64) -> Option<bool> {
        if self.todo == 0 {
            return Some(true);
        }
        let open = if used < self.k {
            (1u64 << (used + 1)) - 1
        } else {
            u64::MAX
        };
        let v = self.choose(open);
        let choices = self.domain[v] & open;
        for c in (0..self.k).filter(|&c| choices >> c & 1 == 1) {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            let mark = self.trail.len();
            if self.assign(v, c) {
                match self.branch(used.max(c + 1), budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            self.undo_to(mark);
        }
        Some(false)
    }

    fn choose(&self, open: u64) -> usize {
        let mut best = None;
        let mut best_key = (u32::MAX, 0, 0);
        for v in 0..self.color.len() {
            if self.color[v].is_some() || self.incidence[v].is_empty() {
                continue;
            }
            let live = (self.domain[v] & open).count_ones();
            let seen = self.comembers[v]
                .iter()
                .filter_map(|u| self.color[u])
                .fold(0u64, |m, c| m | 1 << c)
                .count_ones();
            let key = (live, seen, self.comembers[v].len());
            // smaller live domain, then larger saturation, then larger degree
            let better = match best {
                None => true,
                Some(_) => {
                    key.0 < best_key.0
                        || (key.0 == best_key.0 && (key.1 > best_key.1 || (key.1 == best_key.1 && key.2 > best_key.2)))
                }
            };
            if better {
                best = Some(v);
                best_key = key;
            }
        }
        best.expect("todo > 0 implies an uncolored incident vertex")
    }

    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = Some(c as u8);
        self.trail.push(Undo::Color(v));
        self.todo -= 1;
        for idx in 0..self.incidence[v].len() {
            let e = self.incidence[v][idx];
            let old = self.edge_state[e];
            self.trail.push(Undo::Edge(e, old));
            let color = match old.color {
                EdgeColor::Unset => EdgeColor::Mono(c as u8),
                EdgeColor::Mono(m) if usize::from(m) == c => EdgeColor::Mono(m),
                _ => EdgeColor::Mixed,
            };
            let assigned = old.assigned + 1;
            self.edge_state[e] = EdgeState { assigned, color };
            if let EdgeColor::Mono(m) = color {
                let size = self.edges[e].len();
                if assigned == size {
                    return false;
                }
                if assigned + 1 == size {
                    let last = self.edges[e]
                        .iter()
                        .copied()
                        .find(|&u| self.color[u].is_none())
                        .expect("one vertex unassigned");
                    let dom = self.domain[last];
                    let bit = 1u64 << m;
                    if dom & bit != 0 {
                        self.trail.push(Undo::Domain(last, dom));
                        self.domain[last] = dom & !bit;
                        if dom & !bit == 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("len > mark") {
                Undo::Domain(v, d) => self.domain[v] = d,
                Undo::Edge(e, s) => self.edge_state[e] = s,
                Undo::Color(v) => {
                    self.color[v] = None;
                    self.todo += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{chi_c_bruteforce, verify_coloring};
    use crate::graph::{gen_bipartite, gen_gnp};

    #[test]
    fn small_closed_forms() {
        let lim = ExactLimits::default();
        assert_eq!(chi_c_exact(&Graph::new(1), lim).unwrap().k, 1);
        assert_eq!(chi_c_exact(&Graph::new(7), lim).unwrap().k, 1);
        for n in 2..=20 {
            let r = chi_c_exact(&Graph::complete(n), lim).unwrap();
            assert!(r.proved());
            assert_eq!(r.k, 2);
        }
        assert_eq!(chi_c_exact(&Graph::cycle(5), lim).unwrap().k, 3);
    }

    #[test]
    fn complete_tripartite_needs_two() {
        let g = Graph::complete_multipartite(&[3, 3, 3]);
        let r = chi_c_exact(&g, ExactLimits::default()).unwrap();
        assert_eq!(r.k, 2);
        assert_eq!(chi_c_bruteforce(&g).unwrap().0, 2);
        assert!(verify_coloring(&g, &r.coloring).unwrap().valid);
    }

    #[test]
    fn bipartite_needs_two() {
        let mut rng = RngHandle::new(2);
        for _ in 0..10 {
            let g = gen_bipartite(6, 7, 0.4, &mut rng).unwrap();
            if g.edge_count() == 0 {
                continue;
            }
            assert_eq!(chi_c_exact(&g, ExactLimits::default()).unwrap().k, 2);
        }
    }

    #[test]
    fn matches_bruteforce_on_random_small_graphs() {
        let mut rng = RngHandle::new(11);
        for i in 0..150 {
            let n = 5 + i % 4;
            let p = [0.3, 0.5, 0.7][i % 3];
            let g = gen_gnp(n, p, &mut rng).unwrap();
            let r = chi_c_exact(&g, ExactLimits::default()).unwrap();
            assert!(r.proved());
            assert_eq!(r.k, chi_c_bruteforce(&g).unwrap().0, "{g:?}");
            assert!(verify_coloring(&g, &r.coloring).unwrap().valid);
        }
    }

    #[test]
    fn budget_exhaustion_reports_a_gap() {
        let g = gen_gnp(40, 0.5, &mut RngHandle::new(1)).unwrap();
        let r = chi_c_exact(
            &g,
            ExactLimits {
                node_budget: 1,
                ..ExactLimits::default()
            },
        )
        .unwrap();
        if let ExactStatus::LowerUpperGap { lower, upper } = r.status {
            assert!(lower < upper);
            assert_eq!(r.k, upper);
        }
        assert!(verify_coloring(&g, &r.coloring).unwrap().valid);
    }

    #[test]
    fn truncation_refuses_proof() {
        let g = Graph::cycle(9);
        let r = chi_c_exact(
            &g,
            ExactLimits {
                clique_cap: 3,
                ..ExactLimits::default()
            },
        )
        .unwrap();
        assert!(r.truncated);
        assert!(!r.proved());
    }

    #[test]
    fn engine_colors_ordinary_graphs_with_edges_as_hyperedges() {
        // odd cycle: chromatic number 3
        let edges: Vec<Vec<usize>> = (0..7).map(|i| vec![i, (i + 1) % 7]).collect();
        let mut budget = u64::MAX;
        assert_eq!(weak_coloring(7, &edges, 2, &mut budget), WeakSearch::Infeasible);
        assert!(matches!(weak_coloring(7, &edges, 3, &mut budget), WeakSearch::Found(_)));
    }
}
