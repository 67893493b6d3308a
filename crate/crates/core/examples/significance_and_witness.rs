//! The certificate pipeline on one graph: small-set independence, bad
//! vertices, significance, and an audited covering clique.

use clique_chromatic::cert::{
    check_lemma21, check_lemma22, construct_covering_clique, is_significant, Lemma21Mode, ParameterProfile,
    WITNESS_EFFORT,
};
use clique_chromatic::{gen_gnp, RngHandle, VertexSet};

fn main() -> clique_chromatic::Result<()> {
    let n = 512;
    let thr = ParameterProfile::desk().resolve(n);
    println!(
        "desk thresholds at n = {n}: k = {}, r = {}, s = {}, m(n/2) = {}",
        thr.k,
        thr.r,
        thr.s,
        thr.m_for(n / 2)
    );

    let mut rng = RngHandle::new(13);
    let g = gen_gnp(n, 0.5, &mut rng)?;
    let l21 = check_lemma21(
        &g,
        &thr,
        Lemma21Mode::Sampled {
            s_max: thr.s_max,
            trials: 200,
            seed: 1,
        },
    )?;
    println!(
        "small sets: min common non-neighbours {} vs threshold {} -> {}",
        l21.min_count, l21.threshold, l21.holds
    );

    let all: Vec<usize> = (0..n).collect();
    let y = VertexSet::from_vertices(n, rng.sample(&all, n / 2));
    let l22 = check_lemma22(&g, &y, &thr)?;
    println!(
        "bad vertices for a random half: {} (cap {})",
        l22.bad.len(),
        l22.bad_cap
    );
    let sig = is_significant(&g, &y, &thr)?;
    println!("significant: {}", sig.significant());

    match construct_covering_clique(&g, &y, &thr, &mut rng, WITNESS_EFFORT)? {
        Ok(w) => {
            w.audit(&g).map_err(clique_chromatic::Error::Domain)?;
            println!("covering clique {} (b = {:?}), audit passed", w.clique_set(), w.b);
            for (v, u) in w.coverage.iter().take(5) {
                println!("  outside vertex {v} misses clique vertex {u}");
            }
        }
        Err(f) => println!("construction failed at stage {}: {f}", f.stage()),
    }
    Ok(())
}
