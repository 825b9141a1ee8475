//! SubMix on two MUTAG graphs: the diffusion-selected node sets, the rank
//! mapping between them and the resulting soft label.
//!
//! ```text
//! cargo run --release --example submix -- [target] [partner] [seed]
//! ```
//!
//! The partner defaults to the first graph of another class.

use std::path::Path;

use graphaug::dataset::load_tudataset;
use graphaug::diffusion::DiffusionConfig;
use graphaug::rng;
use graphaug::submix::{mix, sample_pair, NodeMapping, DEFAULT_P};

fn main() -> graphaug::Result<()> {
    let args: Vec<u64> = std::env::args()
        .skip(1)
        .map(|s| s.parse().expect("integer argument"))
        .collect();
    let set = load_tudataset(
        &Path::new(env!("CARGO_MANIFEST_DIR")).join("data/MUTAG"),
        "MUTAG",
    )?;
    let gi = args.first().map_or(0, |&i| i as usize);
    let pi = match args.get(1) {
        Some(&i) => i as usize,
        None => (0..set.len())
            .find(|&j| set.label(j) != set.label(gi))
            .expect("a second class"),
    };
    let seed = args.get(2).copied().unwrap_or(3);
    let (g, g2) = (&set.graphs()[gi], &set.graphs()[pi]);
    println!(
        "target {gi}: {} nodes, {} edges, class {}",
        g.node_count(),
        g.edge_count(),
        set.label(gi)
    );
    println!(
        "partner {pi}: {} nodes, {} edges, class {}",
        g2.node_count(),
        g2.edge_count(),
        set.label(pi)
    );

    let cfg = DiffusionConfig::default();
    let mut r = rng::master(seed);
    // redraw until the replaced region is non-empty, for a readable demo
    let (s, s2) = loop {
        let pair = sample_pair(g, g2, DEFAULT_P, &cfg, &mut r)?;
        if pair.0.len() >= 3 {
            break pair;
        }
    };
    println!("\nreplaced in target ({:?}): {:?}", s.source, s.nodes);
    println!("taken from partner ({:?}): {:?}", s2.source, s2.nodes);
    let map = NodeMapping::by_rank(&s, &s2)?;
    println!("partner -> target: {:?}", map.pairs);

    let out = mix(
        g,
        set.label(gi),
        g2,
        set.label(pi),
        &s,
        &s2,
        set.num_classes(),
    )?;
    println!(
        "\noutput: {} nodes, {} edges ({} kept, {} from partner)",
        out.graph.node_count(),
        out.graph.edge_count(),
        out.kept_edges,
        out.donor_edges
    );
    println!("soft label {:?}", out.soft_label);
    Ok(())
}
