//! Monte Carlo checks of the closed-form expectations behind NodeSam: the
//! triangles a split destroys, the triangles one compensating edge creates
//! and the edges a merge removes.
//!
//! ```text
//! cargo run --release --example oracles -- [trials] [seed]
//! ```

use graphaug::graph::{count_triangles, triangles_at};
use graphaug::nodesam::compute_h;
use graphaug::verify::{
    oracle_adjust_triangles, oracle_merge_edges, oracle_split_triangles, OracleReport,
};
use graphaug::Graph;

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).expect("simple graph")
}

fn show(what: &str, r: &OracleReport) {
    println!(
        "{what:<26} predicted {:>8.4}  simulated {:>8.4} +- {:.4}  {}{}",
        r.predicted,
        r.mean,
        r.se,
        if r.pass { "ok" } else { "MISMATCH" },
        if r.is_exact() { " (exact)" } else { "" }
    );
}

fn main() -> graphaug::Result<()> {
    let mut args = std::env::args().skip(1);
    let trials: usize = args.next().map_or(100_000, |s| s.parse().expect("trials"));
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));

    // K5 with a pendant path, so the graph is not vertex-transitive
    let mut edges: Vec<_> = (0..5)
        .flat_map(|u| (u + 1..5).map(move |v| (u, v)))
        .collect();
    edges.extend([(4, 5), (5, 6), (6, 2)]);
    let mixed = Graph::from_edges(7, &edges)?;

    for (name, g) in [
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("K5+path", mixed),
    ] {
        println!(
            "{name}: {} edges, {} triangles",
            g.edge_count(),
            count_triangles(&g)
        );
        let t = triangles_at(&g, 0)?.count;
        let h = compute_h(t, g.degree(0), g.node_count(), g.edge_count())?;
        println!("  h at node 0 = {h:.5}");
        show(
            "  split triangles at 0",
            &oracle_split_triangles(&g, 0, trials, seed)?,
        );
        let u = g.neighbors(0)[0];
        show(
            &format!("  adjust triangles via {u}"),
            &oracle_adjust_triangles(&g, 0, u, trials, seed)?,
        );
        show("  merge edges", &oracle_merge_edges(&g, trials, seed)?);
    }
    Ok(())
}
