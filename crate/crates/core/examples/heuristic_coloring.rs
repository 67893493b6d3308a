//! Greedy clique colorings on larger graphs, verified against the enumerator.

use clique_chromatic::coloring::{greedy_clique_coloring, verify_coloring, Coloring};
use clique_chromatic::{gen_gnp, RngHandle};

fn main() -> clique_chromatic::Result<()> {
    for n in [64, 128, 256, 512] {
        let g = gen_gnp(n, 0.5, &mut RngHandle::new(5))?;
        let mut rng = RngHandle::new(11);
        let c = greedy_clique_coloring(&g, &mut rng)?;
        let v = verify_coloring(&g, &c)?;
        println!(
            "n = {n:4}: {} colors, valid = {}, ceil(log2 n) = {}",
            c.k(),
            v.valid,
            n.ilog2()
        );
    }

    let g = gen_gnp(40, 0.5, &mut RngHandle::new(2))?;
    let v = verify_coloring(&g, &Coloring::monochrome(40))?;
    println!(
        "one color on G(40, 1/2): valid = {}, witness {:?}",
        v.valid,
        v.witness.map(|w| w.to_vec())
    );
    Ok(())
}
