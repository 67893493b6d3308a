//! Test-side oracles. Deliberately naive: adjacency matrices, subset scans
//! and plain backtracking, sharing no code with the library algorithms.

#![allow(dead_code)]

use std::collections::BTreeSet;

use clique_chromatic::graph::Graph;

pub struct Adj {
    pub n: usize,
    m: Vec<Vec<bool>>,
}

impl Adj {
    pub fn of(g: &Graph) -> Adj {
        let n = g.n();
        let m = (0..n)
            .map(|u| (0..n).map(|v| u != v && g.has_edge(u, v)).collect())
            .collect();
        Adj { n, m }
    }

    pub fn edge(&self, u: usize, v: usize) -> bool {
        self.m[u][v]
    }

    pub fn is_clique(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| self.m[u][v]))
    }

    /// A clique no outside vertex is adjacent to in full.
    pub fn is_maximal_clique(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.is_clique(s) && (0..self.n).all(|w| s.contains(&w) || s.iter().any(|&u| !self.m[u][w]))
    }

    /// Every maximal clique (singletons included) by scanning all subsets.
    pub fn maximal_cliques_by_subsets(&self) -> BTreeSet<Vec<usize>> {
        assert!(self.n <= 20);
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << self.n) {
            let s: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
            if self.is_maximal_clique(&s) {
                out.insert(s);
            }
        }
        out
    }

    /// Clique chromatic number by trying every coloring with k = 1, 2, ...
    pub fn chi_c(&self) -> usize {
        let edges: Vec<Vec<usize>> = self
            .maximal_cliques_by_subsets()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .collect();
        if edges.is_empty() {
            return 1;
        }
        for k in 2..=self.n {
            let mut colors = vec![0usize; self.n];
            loop {
                if edges.iter().all(|e| e.iter().any(|&v| colors[v] != colors[e[0]])) {
                    return k;
                }
                // Odometer over k^n with vertex 0 pinned to color 0.
                let mut i = 1;
                while i < self.n && colors[i] == k - 1 {
                    colors[i] = 0;
                    i += 1;
                }
                if i >= self.n {
                    break;
                }
                colors[i] += 1;
            }
        }
        unreachable!("n colors always suffice")
    }

    /// Maximal cliques of the subgraph induced on `within`.
    pub fn induced_maximal_cliques(&self, within: &[usize], mut visit: impl FnMut(&[usize])) {
        fn rec(a: &Adj, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
            if p.is_empty() {
                if x.is_empty() {
                    visit(r);
                }
                return;
            }
            let pivot = *p
                .iter()
                .chain(&x)
                .max_by_key(|&&u| p.iter().filter(|&&v| a.m[u][v]).count())
                .unwrap();
            let branch: Vec<usize> = p.iter().copied().filter(|&v| !a.m[pivot][v]).collect();
            let (mut p, mut x) = (p, x);
            for v in branch {
                r.push(v);
                let np = p.iter().copied().filter(|&w| a.m[v][w]).collect();
                let nx = x.iter().copied().filter(|&w| a.m[v][w]).collect();
                rec(a, r, np, nx, visit);
                r.pop();
                p.retain(|&w| w != v);
                x.push(v);
            }
        }
        rec(self, &mut Vec::new(), within.to_vec(), Vec::new(), &mut visit);
    }

    /// A monochromatic maximal clique of size >= 2, if the coloring has one.
    pub fn bad_clique(&self, colors: &[usize]) -> Option<Vec<usize>> {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        for c in 0..k {
            let class: Vec<usize> = (0..self.n).filter(|&v| colors[v] == c).collect();
            let mut found = None;
            self.induced_maximal_cliques(&class, |s| {
                if found.is_none() && s.len() >= 2 && self.is_maximal_clique(s) {
                    found = Some(s.to_vec());
                }
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }
}
