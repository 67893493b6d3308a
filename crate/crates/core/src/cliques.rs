//! Maximal cliques: lazy enumeration, maximality tests, greedy extension,
//! and a budgeted clique search.
//!
//! Enumeration is Bron–Kerbosch with Tomita pivoting (the pivot is the vertex
//! of `P ∪ X` with the most neighbors in `P`) and, for whole-graph runs, a
//! degeneracy-ordered outer loop. The recursion is kept on an explicit stack
//! so [`CliqueStream`] can yield cliques one at a time.

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngHandle;

pub const DEFAULT_CLIQUE_CAP: u64 = 10_000_000;

/// Signalled once, in place of the clique that would have exceeded the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncated {
    pub cap: u64,
}

struct Frame {
    r: Vec<usize>,
    p: VertexSet,
    x: VertexSet,
    branch: Vec<usize>,
    next: usize,
}

/// Lazily produced maximal cliques of a fixed graph.
///
/// Yields `Ok(clique)` for each maximal clique with at least `min_size`
/// vertices and no duplicates. If more than `cap` cliques exist, the
/// `cap + 1`-th item is `Err(Truncated)` and the stream ends.
pub struct CliqueStream<'g> {
    g: &'g Graph,
    min_size: usize,
    cap: u64,
    emitted: u64,
    stack: Vec<Frame>,
    pending: Option<VertexSet>,
    finished: bool,
}

impl<'g> CliqueStream<'g> {
    /// All maximal cliques of `g`.
    pub fn new(g: &'g Graph) -> Self {
        let mut s = CliqueStream::empty(g);
        if g.n() > 0 {
            s.stack.push(Frame {
                r: Vec::new(),
                p: g.vertices(),
                x: VertexSet::empty(g.n()),
                branch: degeneracy_order(g),
                next: 0,
            });
        }
        s
    }

    /// Maximal cliques of `g` that contain `base` and otherwise lie inside
    /// `candidates`, where `excluded` lists the vertices that could still
    /// extend such a clique without being allowed in it.
    ///
    /// With `base = ∅`, `candidates = Y` and `excluded = V - Y` this yields
    /// exactly the maximal cliques of `g` contained in `Y`. The caller must
    /// ensure `base` is a clique and both sets lie in `N(base)`.
    pub fn within(g: &'g Graph, base: &[usize], candidates: VertexSet, excluded: VertexSet) -> Self {
        let mut s = CliqueStream::empty(g);
        s.pending = s.node(base.to_vec(), candidates, excluded);
        s
    }

    fn empty(g: &'g Graph) -> Self {
        CliqueStream {
            g,
            min_size: 1,
            cap: DEFAULT_CLIQUE_CAP,
            emitted: 0,
            stack: Vec::new(),
            pending: None,
            finished: false,
        }
    }

    pub fn min_size(mut self, min_size: usize) -> Self {
        self.min_size = min_size;
        if self.pending.as_ref().is_some_and(|c| c.len() < min_size) {
            self.pending = None;
        }
        self
    }

    pub fn cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    /// Number of cliques yielded so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Drains the stream; truncation becomes an error.
    pub fn collect_all(self) -> Result<Vec<VertexSet>> {
        self.map(|c| c.map_err(|t| Error::CliqueCapTruncated(t.cap))).collect()
    }

    /// Pushes a search node, or returns the clique if the node is a leaf.
    fn node(&mut self, r: Vec<usize>, p: VertexSet, x: VertexSet) -> Option<VertexSet> {
        if p.is_empty() {
            if x.is_empty() && r.len() >= self.min_size {
                return Some(VertexSet::from_vertices(self.g.n(), r));
            }
            return None;
        }
        if r.len() + p.len() < self.min_size {
            return None;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .max_by_key(|&u| (p.intersection_len_words(self.g.row(u)), std::cmp::Reverse(u)))
            .expect("P is nonempty");
        let branch = p.iter().filter(|&v| !self.g.has_edge(pivot, v)).collect();
        self.stack.push(Frame {
            r,
            p,
            x,
            branch,
            next: 0,
        });
        None
    }

    fn emit(&mut self, clique: VertexSet) -> Option<std::result::Result<VertexSet, Truncated>> {
        if self.emitted == self.cap {
            self.finished = true;
            self.stack.clear();
            return Some(Err(Truncated { cap: self.cap }));
        }
        self.emitted += 1;
        Some(Ok(clique))
    }
}

impl Iterator for CliqueStream<'_> {
    type Item = std::result::Result<VertexSet, Truncated>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.finished {
            return None;
        }
        if let Some(c) = self.pending.take() {
            return self.emit(c);
        }
        loop {
            let frame = self.stack.last_mut()?;
            if frame.next == frame.branch.len() {
                self.stack.pop();
                continue;
            }
            let v = frame.branch[frame.next];
            frame.next += 1;
            let row = self.g.row(v);
            let p = frame.p.intersect_words(row);
            let x = frame.x.intersect_words(row);
            frame.p.remove(v);
            frame.x.insert(v);
            let mut r = frame.r.clone();
            r.push(v);
            if let Some(c) = self.node(r, p, x) {
                return self.emit(c);
            }
        }
    }
}

/// Maximal cliques with at least `min_size` vertices, default cap.
pub fn maximal_cliques(g: &Graph, min_size: usize) -> CliqueStream<'_> {
    CliqueStream::new(g).min_size(min_size)
}

/// Smallest-last (degeneracy) order: repeatedly remove a minimum-degree
/// vertex, lowest index on ties.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v).iter() {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    order
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Maximality {
    Maximal,
    NotAClique(usize, usize),
    /// A vertex outside the set adjacent to all of it.
    NotMaximal(usize),
}

impl Maximality {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Maximality::Maximal)
    }
}

pub fn is_maximal_clique(g: &Graph, k: &VertexSet) -> Result<Maximality> {
    if k.is_empty() {
        return Err(Error::EmptySet);
    }
    if let Some((u, v)) = g.clique_violation(k) {
        return Ok(Maximality::NotAClique(u, v));
    }
    Ok(match g.common_neighbors(k).first() {
        Some(w) => Maximality::NotMaximal(w),
        None => Maximality::Maximal,
    })
}

/// Greedily grows the clique `k` to a maximal one, picking each new vertex
/// uniformly among the current common neighbors.
pub fn extend_to_maximal(g: &Graph, k: &VertexSet, rng: &mut RngHandle) -> Result<VertexSet> {
    if let Some((u, v)) = g.clique_violation(k) {
        return Err(Error::NotAClique(u, v));
    }
    let mut clique = k.clone();
    let mut cand = g.common_neighbors(k);
    while !cand.is_empty() {
        let members = cand.to_vec();
        let v = members[rng.below(members.len())];
        clique.insert(v);
        cand = cand.intersect_words(g.row(v));
    }
    Ok(clique)
}

/// Work limits for [`find_clique_in`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchEffort {
    /// Randomized greedy passes tried before backtracking.
    pub restarts: u32,
    /// Backtracking nodes after the greedy passes.
    pub nodes: u64,
}

impl Default for SearchEffort {
    fn default() -> Self {
        SearchEffort {
            restarts: 32,
            nodes: 200_000,
        }
    }
}

/// Looks for a clique of at least `target` vertices inside `y`.
///
/// Randomized greedy passes (next vertex: most neighbors among the remaining
/// candidates, random tie-break) followed by budgeted backtracking. `None`
/// only means the budget ran out; it says nothing about existence.
pub fn find_clique_in(
    g: &Graph,
    y: &VertexSet,
    target: usize,
    rng: &mut RngHandle,
    effort: SearchEffort,
) -> Option<VertexSet> {
    if target > y.len() {
        return None;
    }
    for _ in 0..effort.restarts {
        let mut clique = VertexSet::empty(g.n());
        let mut cand = y.clone();
        while !cand.is_empty() {
            let scored: Vec<(usize, usize)> = cand
                .iter()
                .map(|v| (v, cand.intersection_len_words(g.row(v))))
                .collect();
            let best = scored.iter().map(|&(_, d)| d).max().expect("nonempty");
            if clique.len() + 1 + best < target {
                break;
            }
            let top: Vec<usize> = scored.iter().filter(|&&(_, d)| d == best).map(|&(v, _)| v).collect();
            let v = top[rng.below(top.len())];
            clique.insert(v);
            cand = cand.intersect_words(g.row(v));
        }
        if clique.len() >= target {
            return Some(clique);
        }
    }
    let mut order = y.to_vec();
    rng.shuffle(&mut order);
    let mut budget = effort.nodes;
    let mut r = Vec::new();
    if backtrack(g, &mut r, y.clone(), &order, target, &mut budget) {
        return Some(VertexSet::from_vertices(g.n(), r));
    }
    None
}

fn backtrack(
    g: &Graph,
    r: &mut Vec<usize>,
    mut p: VertexSet,
    order: &[usize],
    target: usize,
    budget: &mut u64,
) -> bool {
    if r.len() >= target {
        return true;
    }
    for &v in order {
        if !p.contains(v) {
            continue;
        }
        if r.len() + p.len() < target || *budget == 0 {
            return false;
        }
        *budget -= 1;
        p.remove(v);
        r.push(v);
        if backtrack(g, r, p.intersect_words(g.row(v)), order, target, budget) {
            return true;
        }
        r.pop();
    }
    false
}
