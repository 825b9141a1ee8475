//! One NodeSam run traced stage by stage, then the mean edge change of
//! every variant over many runs.
//!
//! ```text
//! cargo run --release --example nodesam -- [seed]
//! ```

use graphaug::graph::count_triangles;
use graphaug::nodesam::{nodesam_traced, nodesam_variant, NodeSamVariant};
use graphaug::rng;
use graphaug::verify::{MeanEstimate, Z99};
use graphaug::Graph;

fn main() -> graphaug::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(7, |s| s.parse().expect("seed"));

    // a square 0-1-2-3 with a roof 4 over the 0-1 side
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])?;
    println!(
        "input: {} nodes, {} edges, {} triangles",
        g.node_count(),
        g.edge_count(),
        count_triangles(&g)
    );

    let t = nodesam_traced(&g, &mut rng::master(seed))?;
    let (vj, vk) = t.split.children;
    println!(
        "split node {} into {vj} and {vk}: {} edges",
        t.split.target,
        t.split.graph.edge_count()
    );
    let a = &t.adjust.params;
    println!(
        "adjust: t={} d={} h={:.4} candidates {:?}, each kept with p={:.3}, chose {:?}",
        a.triangles,
        a.degree,
        a.h,
        a.candidates,
        a.inclusion_probability(),
        a.chosen
    );
    let m = &t.merge;
    println!(
        "merge {:?} into node {}: removed {} edges, output {} nodes / {} edges",
        m.merged,
        m.result,
        m.removed_edges,
        m.graph.node_count(),
        m.graph.edge_count()
    );
    for u in 0..m.graph.node_count() {
        println!("  {u}: {:?}", m.graph.neighbors(u));
    }

    println!("\nedge change over 100000 runs (99% interval):");
    let variants = [
        NodeSamVariant::SplitOnly,
        NodeSamVariant::MergeOnly,
        NodeSamVariant::Base,
        NodeSamVariant::Full,
    ];
    for v in variants {
        let deltas: Vec<i64> = (0..100_000u64)
            .map(|i| {
                let out = nodesam_variant(&g, v, &mut rng::stream(seed, 1, i))?;
                Ok(out.edge_count() as i64 - g.edge_count() as i64)
            })
            .collect::<graphaug::Result<_>>()?;
        let est = MeanEstimate::from_ints(&deltas);
        let (lo, hi) = est.ci(Z99);
        let name = format!("{v:?}");
        println!("  {name:<10} mean {:+.4}  [{lo:+.4}, {hi:+.4}]", est.mean);
    }
    Ok(())
}
