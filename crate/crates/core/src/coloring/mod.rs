//! Clique colorings: vertex colorings in which no maximal clique with at
//! least two vertices is monochromatic.
//!
//! [`verify_coloring`] checks a coloring and returns a monochromatic maximal
//! clique when there is one. The clique chromatic number is computed exactly
//! by [`chi_c_exact`] (branch-and-bound over the hypergraph of maximal
//! cliques), by [`chi_c_bruteforce`] for tiny graphs, and bounded from above
//! by [`greedy_clique_coloring`].

mod brute;
mod exact;
mod greedy;

use std::fmt::Write as _;
use std::io::BufRead;

use serde::Serialize;

pub use brute::{chi_c_bruteforce, BRUTE_FORCE_MAX_N};
pub use exact::{chi_c_exact, weak_coloring, ExactLimits, ExactResult, ExactStatus, WeakSearch};
pub use greedy::greedy_clique_coloring;

use crate::bitset::VertexSet;
use crate::cliques::CliqueStream;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Assignment of one of `k` colors to every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c >= k) {
            return Err(Error::ColorOutOfRange { vertex, color, k });
        }
        Ok(Coloring { colors, k })
    }

    /// `k` is one more than the largest color used.
    pub fn from_colors(colors: Vec<usize>) -> Self {
        let k = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, k }
    }

    /// Every vertex gets color 0.
    pub fn monochrome(n: usize) -> Self {
        Coloring {
            colors: vec![0; n],
            k: usize::from(n > 0),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Color classes `Y_0, …, Y_{k-1}`; some may be empty.
    pub fn classes(&self) -> Vec<VertexSet> {
        let n = self.colors.len();
        let mut classes = vec![VertexSet::empty(n); self.k];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].insert(v);
        }
        classes
    }

    /// Relabels colors by first appearance and drops empty classes.
    pub fn normalized(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.k];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring { colors, k: next }
    }

    /// `k=<count>` header, then the color of vertex `i` on line `i + 1`.
    pub fn to_text(&self) -> String {
        let mut s = format!("k={}\n", self.k);
        for c in &self.colors {
            writeln!(s, "{c}").expect("writing to a String");
        }
        s
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<Self> {
        let mut k = None;
        let mut colors = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: i + 1, msg };
            match k {
                None => {
                    let rest = line
                        .strip_prefix("k=")
                        .ok_or_else(|| bad("expected `k=<count>` header".into()))?;
                    k = Some(rest.parse().map_err(|_| bad(format!("bad class count `{rest}`")))?);
                }
                Some(_) => colors.push(line.parse().map_err(|_| bad(format!("bad color `{line}`")))?),
            }
        }
        let k = k.ok_or(Error::Parse {
            line: 0,
            msg: "missing `k=<count>` header".into(),
        })?;
        Coloring::new(colors, k)
    }
}

/// Result of checking a coloring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub valid: bool,
    /// A monochromatic maximal clique with at least two vertices.
    pub witness: Option<VertexSet>,
    /// Color of the witness.
    pub color: Option<usize>,
}

/// Checks that no maximal clique of size >= 2 is monochromatic, stopping at
/// the first witness (lowest color class first).
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<Verdict> {
    if c.len() != g.n() {
        return Err(Error::SizeMismatch {
            coloring: c.len(),
            graph: g.n(),
        });
    }
    for (color, class) in c.classes().into_iter().enumerate() {
        if let Some(witness) = monochromatic_clique(g, &class) {
            return Ok(Verdict {
                valid: false,
                witness: Some(witness),
                color: Some(color),
            });
        }
    }
    Ok(Verdict {
        valid: true,
        witness: None,
        color: None,
    })
}

/// A maximal clique of `g` with at least two vertices lying inside `class`.
pub fn monochromatic_clique(g: &Graph, class: &VertexSet) -> Option<VertexSet> {
    if class.len() < 2 {
        return None;
    }
    CliqueStream::within(g, &[], class.clone(), class.complement())
        .min_size(2)
        .cap(u64::MAX)
        .next()
        .map(|c| c.expect("uncapped stream"))
}
