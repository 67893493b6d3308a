//! Dense undirected simple graphs with bitset adjacency rows.

use crate::bitset::{intersection_count, tail_mask, words_for, VertexSet};
use crate::error::{Error, Result};
use crate::rng::RngHandle;

/// Undirected simple graph on vertices `0..n`.
///
/// Row `v` of the adjacency matrix is a bitset of the neighbors of `v`.
/// Rows are symmetric, the diagonal is zero, and bits at positions `>= n`
/// are zero.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let stride = words_for(n);
        Graph {
            n,
            stride,
            adj: vec![0; n * stride],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Cycle `0-1-…-(n-1)-0`; `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    /// Path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Complete multipartite graph; parts are consecutive index ranges.
    pub fn complete_multipartite(parts: &[usize]) -> Self {
        let n = parts.iter().sum();
        let mut part_of = Vec::with_capacity(n);
        for (i, &size) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, size));
        }
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if part_of[u] != part_of[v] {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Adds `{u, v}`. Returns `false` for self-loops and existing edges.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        if u == v || self.has_edge(u, v) {
            return false;
        }
        self.adj[u * self.stride + v / 64] |= 1 << (v % 64);
        self.adj[v * self.stride + u / 64] |= 1 << (u % 64);
        true
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Raw adjacency row of `v`.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.stride..(v + 1) * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.row(v).to_vec())
    }

    /// `V - N(v) - {v}`.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors(v).complement();
        s.remove(v);
        s
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
                .collect::<Vec<_>>()
        })
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Symmetry, empty diagonal, and clean tail bits, checked exhaustively.
    pub fn check_invariants(&self) -> bool {
        let mask = tail_mask(self.n);
        for u in 0..self.n {
            let row = self.row(u);
            if row.last().is_some_and(|w| w & !mask != 0) || self.has_edge(u, u) {
                return false;
            }
            for v in 0..self.n {
                if self.has_edge(u, v) != self.has_edge(v, u) {
                    return false;
                }
            }
        }
        true
    }

    /// Vertices adjacent to every member of `set` (all of V for the empty set).
    pub fn common_neighbors(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::full(self.n);
        for v in set {
            out = out.intersect_words(self.row(v));
        }
        out
    }

    /// First non-adjacent pair inside `set`, or `None` if `set` is a clique.
    pub fn clique_violation(&self, set: &VertexSet) -> Option<(usize, usize)> {
        let members = set.to_vec();
        for (i, &u) in members.iter().enumerate() {
            let row = self.row(u);
            for &v in &members[i + 1..] {
                if row[v / 64] >> (v % 64) & 1 == 0 {
                    return Some((u, v));
                }
            }
        }
        None
    }

    pub fn is_clique(&self, set: &VertexSet) -> bool {
        self.clique_violation(set).is_none()
    }

    /// `|{u in y : u not adjacent to v}|` for `v` outside `y`.
    pub fn non_neighbor_count(&self, v: usize, y: &VertexSet) -> Result<usize> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if y.contains(v) {
            return Err(Error::VertexInSet(v));
        }
        Ok(y.len() - y.intersection_len_words(self.row(v)))
    }

    /// Vertices outside `s` with no neighbor in `s`.
    pub fn nonadjacent_to_all(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.complement();
        for v in s {
            let row = self.row(v);
            let words = out.words().iter().zip(row).map(|(a, b)| a & !b).collect();
            out = VertexSet::from_words(self.n, words);
        }
        out
    }

    /// Count of `nonadjacent_to_all(s)` without building the set.
    pub fn nonadjacent_to_all_count(&self, s: &[usize]) -> usize {
        let mut covered = vec![0u64; self.stride];
        for &v in s {
            covered[v / 64] |= 1 << (v % 64);
            for (c, r) in covered.iter_mut().zip(self.row(v)) {
                *c |= r;
            }
        }
        let mask = tail_mask(self.n);
        let last = self.stride.saturating_sub(1);
        covered
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let free = if i == last { !c & mask } else { !c };
                free.count_ones() as usize
            })
            .sum()
    }

    /// Subgraph induced on `s`, with `map[i]` = original index of new vertex `i`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let map = s.to_vec();
        let mut g = Graph::new(map.len());
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        Ok((g, map))
    }

    /// Number of edges between `v` and `set`, via the adjacency row.
    #[inline]
    pub fn neighbors_in(&self, v: usize, set: &VertexSet) -> usize {
        intersection_count(self.row(v), set.words())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Binomial random graph `G(n, p)`.
///
/// Pairs are visited in lexicographic order `(0,1), (0,2), …, (n-2,n-1)`
/// and each consumes exactly one `u64` from `rng`.
pub fn gen_gnp(n: usize, p: f64, rng: &mut RngHandle) -> Result<Graph> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// Uniformly random bipartite graph with sides `0..a` and `a..a+b`.
pub fn gen_bipartite(a: usize, b: usize, p: f64, rng: &mut RngHandle) -> Result<Graph> {
    if a + b == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    let mut g = Graph::new(a + b);
    for u in 0..a {
        for v in a..a + b {
            if rng.bernoulli(p) {
                g.add_edge(u, v);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn gnp_extremes() {
        let mut rng = RngHandle::new(0);
        assert_eq!(gen_gnp(5, 0.0, &mut rng).unwrap().edge_count(), 0);
        assert_eq!(gen_gnp(5, 1.0, &mut rng).unwrap(), Graph::complete(5));
    }

    #[test]
    fn gnp_rejects_bad_input() {
        let mut rng = RngHandle::new(0);
        assert!(matches!(gen_gnp(0, 0.5, &mut rng), Err(Error::EmptyGraph)));
        assert!(matches!(gen_gnp(3, 1.5, &mut rng), Err(Error::InvalidProbability(_))));
        assert!(matches!(gen_gnp(3, -0.1, &mut rng), Err(Error::InvalidProbability(_))));
        assert!(gen_gnp(3, f64::NAN, &mut rng).is_err());
    }

    #[test]
    fn gnp_edge_count_is_concentrated() {
        // C(1000,2)/2 = 249750, sd = sqrt(C(1000,2)/4) ~ 353.4
        let g = gen_gnp(1000, 0.5, &mut RngHandle::new(7)).unwrap();
        let m = g.edge_count() as f64;
        assert!((m - 249_750.0).abs() <= 4.0 * (499_500.0f64 / 4.0).sqrt());
        let again = gen_gnp(1000, 0.5, &mut RngHandle::new(7)).unwrap();
        assert_eq!(g, again);
        assert!(g.check_invariants());
    }

    #[test]
    fn non_neighbor_counts() {
        let n = 5;
        let y = set(n, &[1, 2, 3]);
        assert_eq!(Graph::complete(n).non_neighbor_count(0, &y).unwrap(), 0);
        assert_eq!(Graph::new(n).non_neighbor_count(0, &y).unwrap(), 3);
        assert_eq!(Graph::cycle(5).non_neighbor_count(0, &set(n, &[2, 3])).unwrap(), 2);
        assert!(matches!(
            Graph::cycle(5).non_neighbor_count(2, &y),
            Err(Error::VertexInSet(2))
        ));
    }

    #[test]
    fn nonadjacent_sets() {
        assert!(Graph::complete(4).nonadjacent_to_all(&set(4, &[0])).is_empty());
        assert_eq!(Graph::new(4).nonadjacent_to_all(&set(4, &[0])).to_vec(), vec![1, 2, 3]);
        let p3 = Graph::path(3);
        assert!(p3.nonadjacent_to_all(&set(3, &[1])).is_empty());
        assert_eq!(p3.nonadjacent_to_all(&set(3, &[0])).to_vec(), vec![2]);
        assert_eq!(p3.nonadjacent_to_all(&VertexSet::empty(3)).len(), 3);
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, map) = Graph::complete(5).induced_subgraph(&set(5, &[0, 2, 4])).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(map, vec![0, 2, 4]);
        let (p3, _) = Graph::cycle(5).induced_subgraph(&set(5, &[0, 1, 2])).unwrap();
        assert_eq!(p3, Graph::path(3));
        let g = gen_gnp(20, 0.5, &mut RngHandle::new(1)).unwrap();
        let (copy, map) = g.induced_subgraph(&g.vertices()).unwrap();
        assert_eq!(copy, g);
        assert_eq!(map, (0..20).collect::<Vec<_>>());
        assert!(matches!(
            g.induced_subgraph(&VertexSet::empty(20)),
            Err(Error::EmptySet)
        ));
    }

    proptest! {
        #[test]
        fn generated_graphs_are_simple(n in 1usize..130, p in 0.0f64..=1.0, seed in any::<u64>()) {
            let g = gen_gnp(n, p, &mut RngHandle::new(seed)).unwrap();
            prop_assert!(g.check_invariants());
        }

        #[test]
        fn non_neighbors_plus_neighbors_is_size(seed in any::<u64>(), n in 2usize..64, mask in any::<u64>()) {
            let g = gen_gnp(n, 0.5, &mut RngHandle::new(seed)).unwrap();
            let v = (mask as usize) % n;
            let mut y = VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> (i % 64) & 1 == 1));
            y.remove(v);
            let adjacent = y.iter().filter(|&u| g.has_edge(u, v)).count();
            prop_assert_eq!(g.non_neighbor_count(v, &y).unwrap() + adjacent, y.len());
        }

        #[test]
        fn nonadjacent_matches_filter(seed in any::<u64>(), n in 1usize..=64, mask in any::<u64>()) {
            let g = gen_gnp(n, 0.3, &mut RngHandle::new(seed)).unwrap();
            let s = VertexSet::from_vertices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            let expected: Vec<usize> = (0..n)
                .filter(|&v| !s.contains(v) && s.iter().all(|u| !g.has_edge(u, v)))
                .collect();
            prop_assert_eq!(g.nonadjacent_to_all(&s).to_vec(), expected.clone());
            prop_assert_eq!(g.nonadjacent_to_all_count(&s.to_vec()), expected.len());
        }
    }
}
