//! Exhaustive clique chromatic number for tiny graphs.
//!
//! Deliberately shares no code with the enumeration or branch-and-bound
//! paths: maximal cliques come from scanning all `2^n` vertex subsets, and
//! colorings are restricted growth strings (vertex 0 gets color 0, color `j`
//! appears only after `j - 1`).

use super::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const BRUTE_FORCE_MAX_N: usize = 12;

/// Exact `χ_c(g)` together with an optimal coloring, for `n <= 12`.
pub fn chi_c_bruteforce(g: &Graph) -> Result<(usize, Coloring)> {
    let n = g.n();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::CapExceeded {
            what: "brute-force vertex count",
            limit: BRUTE_FORCE_MAX_N as u64,
        });
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| g.has_edge(u, v)).fold(0, |m, u| m | 1 << u))
        .collect();

    // cliques_ending_at[v]: maximal cliques (>= 2 vertices) whose largest vertex is v
    let mut cliques_ending_at = vec![Vec::new(); n];
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let members = (0..n).filter(|&i| mask >> i & 1 == 1);
        let is_clique = members.clone().all(|v| (mask & !(1 << v)) & !nbr[v] == 0);
        if !is_clique {
            continue;
        }
        let extendable = (0..n).any(|w| mask >> w & 1 == 0 && mask & !nbr[w] == 0);
        if !extendable {
            let top = 31 - mask.leading_zeros() as usize;
            cliques_ending_at[top].push(mask);
        }
    }

    let mut colors = vec![0usize; n];
    for k in 1..=n {
        if assign(0, 0, k, &mut colors, &cliques_ending_at) {
            return Ok((k, Coloring::new(colors, k)?));
        }
    }
    unreachable!("n colors always suffice")
}

fn assign(v: usize, used: usize, k: usize, colors: &mut [usize], ending: &[Vec<u32>]) -> bool {
    if v == colors.len() {
        return true;
    }
    for c in 0..k.min(used + 1) {
        colors[v] = c;
        let mono = ending[v]
            .iter()
            .any(|&mask| (0..v).all(|u| mask >> u & 1 == 0 || colors[u] == c));
        if !mono && assign(v + 1, used.max(c + 1), k, colors, ending) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;

    #[test]
    fn single_vertex_needs_one_color() {
        assert_eq!(chi_c_bruteforce(&Graph::new(1)).unwrap().0, 1);
    }

    #[test]
    fn complete_graphs_need_two() {
        for n in 2..=BRUTE_FORCE_MAX_N {
            let (k, c) = chi_c_bruteforce(&Graph::complete(n)).unwrap();
            assert_eq!(k, 2, "K_{n}");
            assert!(verify_coloring(&Graph::complete(n), &c).unwrap().valid);
        }
    }

    #[test]
    fn five_cycle_needs_three() {
        let (k, c) = chi_c_bruteforce(&Graph::cycle(5)).unwrap();
        assert_eq!(k, 3);
        assert!(verify_coloring(&Graph::cycle(5), &c).unwrap().valid);
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            chi_c_bruteforce(&Graph::new(13)),
            Err(Error::CapExceeded { .. })
        ));
    }
}
