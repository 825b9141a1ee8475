//! Personalized PageRank scores around a root and the connected node sets
//! they select.
//!
//! ```text
//! cargo run --release --example diffusion -- [graph index] [root]
//! ```

use std::path::Path;

use graphaug::dataset::load_tudataset;
use graphaug::diffusion::{ppr_column, sample_connected, top_k_ordered, DiffusionConfig};
use graphaug::graph::induced_is_connected;

fn main() -> graphaug::Result<()> {
    let mut args = std::env::args().skip(1);
    let gi: usize = args.next().map_or(0, |s| s.parse().expect("graph index"));
    let root: usize = args.next().map_or(0, |s| s.parse().expect("root"));

    let set = load_tudataset(
        &Path::new(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG"),
        "MUTAG",
    )?;
    let g = &set.graphs()[gi];
    let cfg = DiffusionConfig::default();
    let scores = ppr_column(g, root, &cfg)?;
    println!(
        "graph {gi}: {} nodes; root {root}; alpha {}; {} iterations; score mass {:.6}",
        g.node_count(),
        scores.alpha,
        scores.iterations,
        scores.scores.iter().sum::<f64>()
    );
    for v in top_k_ordered(&scores, g.node_count())? {
        println!(
            "  node {v:>3}  degree {}  score {:.6}",
            g.degree(v),
            scores.scores[v]
        );
    }

    println!("\nselections:");
    for k in [1, 3, g.node_count() / 2, g.node_count()] {
        let s = sample_connected(g, root, k, &cfg)?;
        println!(
            "  k={k:<3} {:?} connected {} via {:?}",
            s.nodes,
            induced_is_connected(g, &s.nodes),
            s.source
        );
    }
    Ok(())
}
