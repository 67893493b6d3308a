//! Enumerate maximal cliques with the pivoting stream.

use clique_chromatic::cliques::{degeneracy_order, is_maximal_clique, maximal_cliques, CliqueStream};
use clique_chromatic::graph::Graph;
use clique_chromatic::{gen_gnp, RngHandle};

fn main() -> clique_chromatic::Result<()> {
    let octahedron = Graph::complete_multipartite(&[2, 2, 2]);
    let cliques = maximal_cliques(&octahedron, 1).collect_all()?;
    println!("K(2,2,2) has {} maximal cliques:", cliques.len());
    for k in &cliques {
        println!("  {k}");
    }

    let g = gen_gnp(60, 0.5, &mut RngHandle::new(1))?;
    println!("degeneracy order starts {:?}", &degeneracy_order(&g)[..8]);
    let mut sizes = std::collections::BTreeMap::new();
    let mut stream = CliqueStream::new(&g).min_size(2);
    for k in stream.by_ref() {
        let k = k.map_err(|t| clique_chromatic::Error::CliqueCapTruncated(t.cap))?;
        assert!(is_maximal_clique(&g, &k)?.is_maximal());
        *sizes.entry(k.len()).or_insert(0u32) += 1;
    }
    println!(
        "G(60, 1/2): {} maximal cliques of size >= 2, by size {sizes:?}",
        stream.emitted()
    );

    // A cap turns runaway enumeration into an error instead of a hang.
    let capped = CliqueStream::new(&g).cap(10).collect_all();
    println!(
        "with cap 10: {}",
        capped.map(|v| v.len().to_string()).unwrap_or_else(|e| e.to_string())
    );
    Ok(())
}
