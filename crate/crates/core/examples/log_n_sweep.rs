//! Heuristic sweep over n with a least-squares fit against log2 n.

use clique_chromatic::experiments::{run_sweep, summarize, SweepConfig};

fn main() -> clique_chromatic::Result<()> {
    let cfg = SweepConfig {
        ns: vec![32, 64, 128, 256],
        seeds: 8,
        ..SweepConfig::default()
    };
    let cells = run_sweep(&cfg, 4)?;
    for c in cells.iter().filter(|c| c.index == 0) {
        println!("n = {:3} seed {:20}: chi <= {}", c.n, c.seed, c.chi);
    }
    print!("{}", summarize(&cells).to_text());
    println!("rerun with: cliquechrom {}", cfg.rerun());
    Ok(())
}
