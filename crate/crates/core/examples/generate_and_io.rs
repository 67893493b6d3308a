//! Sample a random graph, write it in both formats and read it back.

use clique_chromatic::io::{graph_to_string, read_graph, GraphFormat};
use clique_chromatic::{gen_gnp, RngHandle};

fn main() -> clique_chromatic::Result<()> {
    let g = gen_gnp(12, 0.4, &mut RngHandle::new(7))?;
    println!("G(12, 0.4) seed 7: {} edges", g.edge_count());

    for format in [GraphFormat::EdgeList, GraphFormat::Dimacs] {
        let text = graph_to_string(&g, format);
        let (back, stats) = read_graph(text.as_bytes(), format)?;
        assert_eq!(back, g);
        println!("--- {format:?} ({} warnings on reload)", stats.warnings());
        print!("{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));
        println!("\n...");
    }

    // Self-loops and repeated edges are dropped with a warning count.
    let messy = "3\n0 1\n1 0\n2 2\n1 2\n";
    let (g, stats) = read_graph(messy.as_bytes(), GraphFormat::EdgeList)?;
    println!(
        "messy input: {} edges, {} self-loops, {} duplicates",
        g.edge_count(),
        stats.self_loops,
        stats.duplicates
    );
    Ok(())
}
