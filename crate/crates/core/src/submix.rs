//! SubMix: replace a connected subgraph of one graph with an equally sized
//! connected subgraph of another, mixing the labels by the share of edges
//! each graph contributes.

use rand::seq::index;
use rand::Rng as _;

use crate::diffusion::{sample_connected, DiffusionConfig, OrderedNodeSet, SelectionSource};
use crate::error::{Error, Result};
use crate::graph::{bfs_order, Graph, GraphSet, NodeId, RowBuilder};
use crate::rng::Rng;

pub const DEFAULT_P: f64 = 0.4;

/// An augmented graph with its soft label.
#[derive(Clone, Debug, PartialEq)]
pub struct AugmentedSample {
    /// Hard label is the target graph's label.
    pub graph: Graph,
    pub soft_label: Vec<f64>,
    /// Share of output edges kept from the target graph.
    pub kept_ratio: f64,
    pub kept_edges: usize,
    pub donor_edges: usize,
    /// Index of the donor graph in its set, when one was used.
    pub partner: Option<usize>,
}

impl AugmentedSample {
    /// Sample whose soft label is the one-hot of the graph's own label.
    pub fn hard(graph: Graph, num_classes: usize) -> Result<Self> {
        let y = graph.label().ok_or(Error::MissingLabel { index: 0 })?;
        let soft_label = one_hot(y, num_classes)?;
        let kept_edges = graph.edge_count();
        Ok(Self {
            graph,
            soft_label,
            kept_ratio: 1.0,
            kept_edges,
            donor_edges: 0,
            partner: None,
        })
    }
}

/// Rank correspondence from donor nodes to target nodes: `s2[i] -> s[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMapping {
    pub pairs: Vec<(NodeId, NodeId)>,
}

impl NodeMapping {
    pub fn by_rank(s: &OrderedNodeSet, s2: &OrderedNodeSet) -> Result<Self> {
        if s.len() != s2.len() {
            return Err(Error::SizeMismatch(s.len(), s2.len()));
        }
        Ok(Self {
            pairs: s2
                .nodes
                .iter()
                .copied()
                .zip(s.nodes.iter().copied())
                .collect(),
        })
    }
}

fn one_hot(y: usize, num_classes: usize) -> Result<Vec<f64>> {
    if y >= num_classes {
        return Err(Error::LabelOutOfRange {
            label: y,
            num_classes,
        });
    }
    let mut v = vec![0.0; num_classes];
    v[y] = 1.0;
    Ok(v)
}

/// Uniform over every index except `g_index`.
pub fn pick_partner(set_len: usize, g_index: usize, rng: &mut Rng) -> Result<usize> {
    if set_len < 2 {
        return Err(Error::TooFewGraphs {
            needed: 2,
            actual: set_len,
        });
    }
    if g_index >= set_len {
        return Err(Error::InvalidParameter(format!(
            "graph index {g_index} out of range for {set_len} graphs"
        )));
    }
    let j = rng.random_range(0..set_len - 1);
    Ok(if j >= g_index { j + 1 } else { j })
}

fn check_ratio(p: f64) -> Result<()> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "p must lie in (0, 1), got {p}"
        )))
    }
}

/// Roots uniform in each graph; `k = floor(uniform(0, p) * min component
/// size)`; both sets drawn by [`sample_connected`].
pub fn sample_pair(
    g: &Graph,
    g2: &Graph,
    p: f64,
    cfg: &DiffusionConfig,
    rng: &mut Rng,
) -> Result<(OrderedNodeSet, OrderedNodeSet)> {
    check_ratio(p)?;
    if g.is_empty() || g2.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let r = rng.random_range(0..g.node_count());
    let r2 = rng.random_range(0..g2.node_count());
    let size = bfs_order(g, r)?.len().min(bfs_order(g2, r2)?.len());
    let k = (rng.random::<f64>() * p * size as f64).floor() as usize;
    Ok((
        sample_connected(g, r, k, cfg)?,
        sample_connected(g2, r2, k, cfg)?,
    ))
}

/// Replaces the subgraph induced by `s` in `g` with the one induced by `s2`
/// in `g2`, matching nodes by rank.
pub fn mix(
    g: &Graph,
    y: usize,
    g2: &Graph,
    y2: usize,
    s: &OrderedNodeSet,
    s2: &OrderedNodeSet,
    num_classes: usize,
) -> Result<AugmentedSample> {
    if g.feature_dim() != g2.feature_dim() {
        return Err(Error::FeatureDimMismatch(g.feature_dim(), g2.feature_dim()));
    }
    let mapping = NodeMapping::by_rank(s, s2)?;
    let (ty, ty2) = (one_hot(y, num_classes)?, one_hot(y2, num_classes)?);

    let mut inside = vec![false; g.node_count()];
    for &v in &s.nodes {
        g.check_node(v)?;
        inside[v] = true;
    }
    let mut image = vec![usize::MAX; g2.node_count()];
    let mut source = vec![usize::MAX; g.node_count()];
    for &(from, to) in &mapping.pairs {
        g2.check_node(from)?;
        image[from] = to;
        source[to] = from;
    }

    // rows outside the swapped set are unchanged; inside rows keep their
    // outside neighbors and take the donor's edges mapped by rank
    let mut b = RowBuilder::with_capacity(g.node_count(), 0);
    let mut inner = 0;
    let mut donor = 0;
    for u in 0..g.node_count() {
        if !inside[u] {
            b.push_row(g.neighbors(u));
            continue;
        }
        let old = g.neighbors(u);
        inner += old.iter().filter(|&&w| inside[w]).count();
        let mapped: Vec<NodeId> = g2
            .neighbors(source[u])
            .iter()
            .map(|&w| image[w])
            .filter(|&j| j != usize::MAX)
            .collect();
        donor += mapped.len();
        b.push_unsorted(old.iter().copied().filter(|&w| !inside[w]).chain(mapped));
    }
    let kept = g.edge_count() - inner / 2;
    let donor = donor / 2;

    let dim = g.feature_dim();
    let mut features = g.features().to_vec();
    for &(from, to) in &mapping.pairs {
        features[to * dim..(to + 1) * dim].copy_from_slice(g2.feature_row(from));
    }

    let q = if kept + donor == 0 {
        1.0
    } else {
        kept as f64 / (kept + donor) as f64
    };
    let soft_label = ty
        .iter()
        .zip(&ty2)
        .map(|(a, b)| q * a + (1.0 - q) * b)
        .collect();
    Ok(AugmentedSample {
        graph: b.finish(features, dim, Some(y)),
        soft_label,
        kept_ratio: q,
        kept_edges: kept,
        donor_edges: donor,
        partner: None,
    })
}

/// SubMix on graph `g_index` of `set` with a uniformly drawn partner.
pub fn submix(
    set: &GraphSet,
    g_index: usize,
    p: f64,
    cfg: &DiffusionConfig,
    rng: &mut Rng,
) -> Result<AugmentedSample> {
    let j = pick_partner(set.len(), g_index, rng)?;
    submix_with(set, g_index, j, p, cfg, rng)
}

/// SubMix with a fixed partner.
pub fn submix_with(
    set: &GraphSet,
    g_index: usize,
    partner: usize,
    p: f64,
    cfg: &DiffusionConfig,
    rng: &mut Rng,
) -> Result<AugmentedSample> {
    let (g, g2) = (&set.graphs()[g_index], &set.graphs()[partner]);
    let (s, s2) = sample_pair(g, g2, p, cfg, rng)?;
    let mut out = mix(
        g,
        set.label(g_index),
        g2,
        set.label(partner),
        &s,
        &s2,
        set.num_classes(),
    )?;
    out.partner = Some(partner);
    Ok(out)
}

fn random_subset(n: usize, k: usize, rng: &mut Rng) -> OrderedNodeSet {
    let nodes = index::sample(rng, n, k).into_vec();
    OrderedNodeSet {
        root: nodes.first().copied().unwrap_or(0),
        nodes,
        source: SelectionSource::Random,
    }
}

/// Ablation: like [`submix`] but both node sets are uniform random subsets
/// of size `floor(uniform(0, p) * min(|V|, |V'|))`, in random order.
pub fn submix_base(
    set: &GraphSet,
    g_index: usize,
    p: f64,
    rng: &mut Rng,
) -> Result<AugmentedSample> {
    check_ratio(p)?;
    let j = pick_partner(set.len(), g_index, rng)?;
    let (g, g2) = (&set.graphs()[g_index], &set.graphs()[j]);
    if g.is_empty() || g2.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let size = g.node_count().min(g2.node_count());
    let k = (rng.random::<f64>() * p * size as f64).floor() as usize;
    let s = random_subset(g.node_count(), k, rng);
    let s2 = random_subset(g2.node_count(), k, rng);
    let mut out = mix(
        g,
        set.label(g_index),
        g2,
        set.label(j),
        &s,
        &s2,
        set.num_classes(),
    )?;
    out.partner = Some(j);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn set(s: &OrderedNodeSet) -> OrderedNodeSet {
        s.clone()
    }

    fn nodes(v: &[NodeId]) -> OrderedNodeSet {
        OrderedNodeSet {
            root: v.first().copied().unwrap_or(0),
            nodes: v.to_vec(),
            source: SelectionSource::Diffusion,
        }
    }

    #[test]
    fn partner_never_self() {
        let mut rng = stream(1, 0, 0);
        assert_eq!(pick_partner(2, 0, &mut rng).unwrap(), 1);
        for _ in 0..1000 {
            assert_ne!(pick_partner(5, 3, &mut rng).unwrap(), 3);
        }
        assert!(matches!(
            pick_partner(1, 0, &mut rng),
            Err(Error::TooFewGraphs { .. })
        ));
    }

    #[test]
    fn path_and_triangle_hand_example() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let out = mix(&path, 0, &tri, 1, &nodes(&[0, 1]), &nodes(&[0, 1]), 2).unwrap();
        assert_eq!((out.kept_edges, out.donor_edges), (1, 1));
        assert_eq!(out.kept_ratio, 0.5);
        assert_eq!(out.soft_label, vec![0.5, 0.5]);
        assert_eq!(out.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn empty_selection_is_identity() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let e = nodes(&[]);
        let out = mix(&path, 1, &tri, 0, &e, &set(&e), 3).unwrap();
        assert!(out.graph.same_topology(&path));
        assert_eq!(out.soft_label, vec![0.0, 1.0, 0.0]);
        assert_eq!(out.kept_ratio, 1.0);
    }

    #[test]
    fn whole_graph_replaced_by_edgeless_donor() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let empty = Graph::from_edges(3, &[]).unwrap();
        let all = nodes(&[1, 0, 2]);
        let out = mix(&path, 0, &empty, 1, &all, &set(&all), 2).unwrap();
        assert_eq!(out.graph.edge_count(), 0);
        assert_eq!(out.kept_ratio, 1.0);
        assert!((out.soft_label.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn features_follow_the_mapping() {
        let g = Graph::new(2, &[(0, 1)], vec![1.0, 2.0], 1, None).unwrap();
        let g2 = Graph::new(2, &[(0, 1)], vec![7.0, 9.0], 1, None).unwrap();
        let out = mix(&g, 0, &g2, 0, &nodes(&[1]), &nodes(&[0]), 1).unwrap();
        assert_eq!(out.graph.features(), &[1.0, 7.0]);
    }

    #[test]
    fn mismatches_are_rejected() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let g2 = Graph::new(2, &[(0, 1)], vec![0.0, 0.0], 1, None).unwrap();
        assert!(matches!(
            mix(&g, 0, &g, 0, &nodes(&[0]), &nodes(&[0, 1]), 1),
            Err(Error::SizeMismatch(1, 2))
        ));
        assert!(matches!(
            mix(&g, 0, &g2, 0, &nodes(&[0]), &nodes(&[0]), 1),
            Err(Error::FeatureDimMismatch(0, 1))
        ));
    }

    #[test]
    fn tiny_ratio_gives_empty_sets() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let (s, s2) = sample_pair(
            &g,
            &g,
            1e-9,
            &DiffusionConfig::default(),
            &mut stream(2, 0, 0),
        )
        .unwrap();
        assert!(s.is_empty() && s2.is_empty());
        assert!(sample_pair(
            &g,
            &g,
            1.0,
            &DiffusionConfig::default(),
            &mut stream(2, 0, 0)
        )
        .is_err());
    }
}
