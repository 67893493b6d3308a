//! Exact clique chromatic numbers, checked against brute force on small graphs.

use clique_chromatic::coloring::{chi_c_bruteforce, chi_c_exact, verify_coloring, ExactLimits};
use clique_chromatic::graph::Graph;
use clique_chromatic::{gen_gnp, RngHandle};

fn main() -> clique_chromatic::Result<()> {
    let named = [
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        ("K4", Graph::complete(4)),
        ("K(3,3)", Graph::complete_multipartite(&[3, 3])),
    ];
    for (name, g) in &named {
        let r = chi_c_exact(g, ExactLimits::default())?;
        let (brute, _) = chi_c_bruteforce(g)?;
        assert!(verify_coloring(g, &r.coloring)?.valid);
        println!(
            "{name:8} chi_c = {} (brute force {brute}), {} hyperedges",
            r.k, r.hyperedges
        );
    }

    for n in [20, 40, 60] {
        let g = gen_gnp(n, 0.5, &mut RngHandle::new(n as u64))?;
        let r = chi_c_exact(&g, ExactLimits::default())?;
        println!(
            "G({n}, 1/2): chi_c = {} status {:?} after {} nodes",
            r.k, r.status, r.nodes
        );
    }

    // A tiny budget reports the gap instead of guessing.
    let g = gen_gnp(60, 0.5, &mut RngHandle::new(3))?;
    let r = chi_c_exact(
        &g,
        ExactLimits {
            node_budget: 1,
            ..ExactLimits::default()
        },
    )?;
    println!("budget 1: {:?}", r.status);
    Ok(())
}
