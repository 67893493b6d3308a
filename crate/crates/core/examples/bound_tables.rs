//! Evaluate the probability estimates in log space for a few n = 2^L.

use clique_chromatic::bounds::{janson_report, lemma21_bounds, lemma22_bounds, lower_bound_coefficient};
use clique_chromatic::cert::ParameterProfile;

fn main() -> clique_chromatic::Result<()> {
    let p = ParameterProfile::paper();
    for l in [20.0, 120.0, 200.0] {
        print!("{}", lemma21_bounds(l, &p).report(&p).to_table());
        print!("{}", lemma22_bounds(l, &p).report(&p).to_table());
        let j = janson_report(l, &p);
        print!("{}", j.report(&p).to_table());
        println!("all Janson verdicts hold at L = {l}: {}\n", j.holds());
    }
    println!("mu >= n^10 from L* = {:.3}", janson_report(200.0, &p).crossover);
    for q in [0.5, 0.25, 0.1] {
        println!("p = {q}: coefficient {:.4}", lower_bound_coefficient(q)?);
    }
    Ok(())
}
