//! Every baseline applied to one small graph: size change, connectivity
//! and what happened to the features.
//!
//! ```text
//! cargo run --release --example baselines -- [seed]
//! ```

use graphaug::baselines::{count_open_triangles, DEFAULT_RHO};
use graphaug::graph::{count_triangles, is_connected};
use graphaug::rng;
use graphaug::{Augmenter, Graph, Method};

fn main() -> graphaug::Result<()> {
    let seed: u64 = std::env::args()
        .nth(1)
        .map_or(11, |s| s.parse().expect("seed"));

    // two triangles joined by a path, one-hot features in 3 columns
    let g = Graph::from_edges(
        7,
        &[
            (0, 1),
            (1, 2),
            (0, 2),
            (2, 3),
            (3, 4),
            (4, 5),
            (5, 6),
            (4, 6),
        ],
    )?;
    let features: Vec<f64> = (0..7)
        .flat_map(|v| (0..3).map(move |c| f64::from(u8::from(v % 3 == c))))
        .collect();
    let g = g.with_features(features, 3)?.with_label(Some(0));
    println!(
        "input: {} nodes, {} edges, {} triangles, {} open triangles, connected {}",
        g.node_count(),
        g.edge_count(),
        count_triangles(&g),
        count_open_triangles(&g),
        is_connected(&g)?
    );
    println!("graphcrop keeps {DEFAULT_RHO} of the root's component\n");

    println!(
        "{:<12} {:>6} {:>6} {:>10} {:>9}",
        "method", "dV", "dE", "connected", "features"
    );
    for m in Method::ALL.into_iter().filter(|m| !m.needs_partner()) {
        if matches!(m, Method::NodeSam(_)) {
            continue;
        }
        let out = Augmenter::new(m).apply_graph(&g, &mut rng::master(seed))?;
        let same_shape = out.node_count() == g.node_count();
        let features = if !same_shape {
            "resized"
        } else if out.features() == g.features() {
            "same"
        } else {
            "changed"
        };
        println!(
            "{:<12} {:>+6} {:>+6} {:>10} {:>9}",
            m.to_string(),
            out.node_count() as i64 - g.node_count() as i64,
            out.edge_count() as i64 - g.edge_count() as i64,
            is_connected(&out)?,
            features
        );
    }
    Ok(())
}
