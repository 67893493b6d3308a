//! Refute balanced colorings with too few classes by exhibiting a
//! monochromatic maximal clique.

use clique_chromatic::cert::{refute_coloring, ParameterProfile, WITNESS_EFFORT};
use clique_chromatic::cliques::is_maximal_clique;
use clique_chromatic::coloring::Coloring;
use clique_chromatic::{gen_gnp, RngHandle};

fn main() -> clique_chromatic::Result<()> {
    let n = 512;
    let thr = ParameterProfile::desk().resolve(n);
    let mut rng = RngHandle::new(21);
    let g = gen_gnp(n, 0.5, &mut rng)?;
    for classes in [1, 2, 3] {
        let mut order: Vec<usize> = (0..n).collect();
        rng.shuffle(&mut order);
        let mut colors = vec![0; n];
        for (i, v) in order.into_iter().enumerate() {
            colors[v] = i % classes;
        }
        let c = Coloring::new(colors, classes)?;
        let out = refute_coloring(&g, &c, &thr, &mut rng, WITNESS_EFFORT)?;
        print!("{classes} classes: reached {:?}", out.stage_reached);
        match out.any_witness() {
            Some((k, color)) => {
                assert!(is_maximal_clique(&g, k)?.is_maximal());
                println!(", monochromatic maximal clique {k} in color {color}");
            }
            None => println!(", no witness ({:?})", out.failure.map(|f| f.reason)),
        }
    }
    Ok(())
}
