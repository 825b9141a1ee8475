//! Graph sets for the property checks.
//!
//! Molecule benchmarks such as MUTAG are connected and triangle-free, which
//! hides two behaviours the checks must observe: edge changes that depend
//! on triangles, and how a method treats disconnected input. The corpus
//! therefore extends a base set with random connected graphs that contain
//! triangles and with disjoint unions of base graphs.

use rand::Rng as _;

use crate::dataset::{gen_er, random_onehot};
use crate::error::{Error, Result};
use crate::graph::{component_labels, induced_subgraph, triangle_stats, Graph, GraphSet};
use crate::nodesam::compute_h;
use crate::rng;

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusConfig {
    /// Random connected graphs to add.
    pub synthetic: usize,
    pub min_nodes: usize,
    pub max_nodes: usize,
    pub avg_degree: f64,
    /// Disjoint unions of two base graphs to add.
    pub unions: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            synthetic: 100,
            min_nodes: 40,
            max_nodes: 80,
            avg_degree: 4.0,
            unions: 20,
        }
    }
}

fn largest_component(g: &Graph) -> Result<Graph> {
    let (labels, count) = component_labels(g);
    let mut sizes = vec![0usize; count];
    for &c in &labels {
        sizes[c] += 1;
    }
    let best = (0..count)
        .max_by_key(|&c| (sizes[c], std::cmp::Reverse(c)))
        .unwrap_or(0);
    let nodes: Vec<usize> = (0..g.node_count()).filter(|&v| labels[v] == best).collect();
    induced_subgraph(g, &nodes)
}

fn disjoint_union(a: &Graph, b: &Graph) -> Result<Graph> {
    let shift = a.node_count();
    let edges: Vec<_> = a
        .edges()
        .chain(b.edges().map(|(u, v)| (u + shift, v + shift)))
        .collect();
    let features = [a.features(), b.features()].concat();
    Graph::new(
        shift + b.node_count(),
        &edges,
        features,
        a.feature_dim(),
        a.label(),
    )
}

/// `base` plus the synthetic additions described by `cfg`.
pub fn property_corpus(base: &GraphSet, cfg: &CorpusConfig, seed: u64) -> Result<GraphSet> {
    let dim = base.feature_dim();
    if cfg.synthetic > 0 && dim == 0 {
        return Err(Error::FeatureDimTooSmall(0));
    }
    if cfg.min_nodes < 2 || cfg.max_nodes < cfg.min_nodes {
        return Err(Error::InvalidParameter("bad synthetic node range".into()));
    }
    let mut graphs = base.graphs().to_vec();
    let mut r = rng::stream(seed, 7, 0);
    for _ in 0..cfg.synthetic {
        let n = r.random_range(cfg.min_nodes..=cfg.max_nodes);
        let max = n * (n - 1) / 2;
        let m = ((n as f64 * cfg.avg_degree / 2.0).round() as usize).min(max);
        let g = largest_component(&gen_er(n, m, &mut r)?)?;
        let label = r.random_range(0..base.num_classes());
        graphs.push(random_onehot(&g, dim, &mut r)?.with_label(Some(label)));
    }
    if cfg.unions > 0 && base.len() < 2 {
        return Err(Error::TooFewGraphs {
            needed: 2,
            actual: base.len(),
        });
    }
    for _ in 0..cfg.unions {
        let i = r.random_range(0..base.len());
        let j = (i + r.random_range(1..base.len())) % base.len();
        graphs.push(disjoint_union(&base.graphs()[i], &base.graphs()[j])?);
    }
    GraphSet::new(graphs, base.num_classes(), dim)
}

/// Smallest `|E| / max_v h_v` over graphs where some node would receive
/// compensating edges, or `None` when none would. The NodeSam edge bias is
/// negligible when this is large.
pub fn certification_ratio(set: &GraphSet) -> Result<Option<f64>> {
    let mut worst: Option<f64> = None;
    for g in set.graphs() {
        let stats = triangle_stats(g);
        let mut max_h = 0.0f64;
        for v in 0..g.node_count() {
            let h = compute_h(
                stats.per_node[v],
                g.degree(v),
                g.node_count(),
                g.edge_count(),
            )?;
            max_h = max_h.max(h);
        }
        if max_h > 0.0 {
            let ratio = g.edge_count() as f64 / max_h;
            worst = Some(worst.map_or(ratio, |w| w.min(ratio)));
        }
    }
    Ok(worst)
}
