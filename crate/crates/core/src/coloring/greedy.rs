//! Heuristic upper bound on the clique chromatic number.
//!
//! Classes are filled one at a time. Vertices are visited in a random order
//! and a vertex joins the current class only if no maximal clique of the
//! whole graph through it would then lie inside the class. Cliques of the
//! class that avoid the new vertex were already checked and maximality in
//! the graph does not depend on the class, so every class stays free of
//! maximal cliques. A final verification pass repairs anything left over by
//! moving one witness vertex into a fresh class.

use super::{verify_coloring, Coloring};
use crate::bitset::VertexSet;
use crate::cliques::CliqueStream;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::RngHandle;

/// Returns a valid clique coloring; its `k` bounds `χ_c(g)` from above.
pub fn greedy_clique_coloring(g: &Graph, rng: &mut RngHandle) -> Result<Coloring> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);

    let mut colors = vec![usize::MAX; n];
    let mut unassigned = n;
    let mut class_id = 0;
    while unassigned > 0 {
        let mut class = VertexSet::empty(n);
        for &v in &order {
            if colors[v] == usize::MAX && can_join(g, &class, v) {
                class.insert(v);
                colors[v] = class_id;
                unassigned -= 1;
            }
        }
        class_id += 1;
    }

    let mut coloring = Coloring::new(colors, class_id)?;
    for _ in 0..=n {
        let verdict = verify_coloring(g, &coloring)?;
        let Some(witness) = verdict.witness else {
            return Ok(coloring);
        };
        let mut colors = coloring.colors().to_vec();
        let v = witness.iter().last().expect("witness has two vertices");
        colors[v] = coloring.k();
        coloring = Coloring::new(colors, coloring.k() + 1)?;
    }
    Err(Error::CapExceeded {
        what: "clique-coloring repair iterations",
        limit: n as u64 + 1,
    })
}

/// Whether `class ∪ {v}` still contains no maximal clique (of size >= 2) of `g`.
fn can_join(g: &Graph, class: &VertexSet, v: usize) -> bool {
    let nbrs = g.neighbors(v);
    if nbrs.is_empty() {
        return true;
    }
    let inside = class.intersection(&nbrs);
    let mut outside = nbrs.difference(class);
    outside.remove(v);
    CliqueStream::within(g, &[v], inside, outside)
        .min_size(2)
        .cap(u64::MAX)
        .next()
        .is_none()
}
