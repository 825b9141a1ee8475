//! NodeSam: split a random node, add compensating edges, merge a random
//! edge.
//!
//! Node layout across the stages is fixed so that outputs stay comparable
//! row-by-row with the input: the split keeps the target's index for the
//! first child and appends the second child at the end; the merge keeps the
//! smaller endpoint's index for the merged node and shifts every later
//! index down by one.

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{common_neighbors, triangles_at, Graph, NodeId};
use crate::rng::Rng;

#[derive(Clone, Debug)]
pub struct SplitOutcome {
    pub graph: Graph,
    /// Split node in the input graph.
    pub target: NodeId,
    /// `(v_j, v_k)` in the split graph; `v_j == target`, `v_k == |V|`.
    pub children: (NodeId, NodeId),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjustParams {
    pub triangles: usize,
    pub degree: usize,
    pub c: f64,
    pub h: f64,
    /// Nodes sharing a triangle with the target, excluding the target.
    pub candidates: Vec<NodeId>,
    pub chosen: Vec<NodeId>,
}

impl AdjustParams {
    fn noop(degree: usize) -> Self {
        Self {
            triangles: 0,
            degree,
            c: 0.0,
            h: 0.0,
            candidates: Vec::new(),
            chosen: Vec::new(),
        }
    }

    /// Per-candidate inclusion probability.
    pub fn inclusion_probability(&self) -> f64 {
        if self.candidates.is_empty() {
            0.0
        } else {
            (self.h / self.candidates.len() as f64).min(1.0)
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdjustOutcome {
    pub graph: Graph,
    pub params: AdjustParams,
}

#[derive(Clone, Debug)]
pub struct MergeOutcome {
    pub graph: Graph,
    /// Merged pair `(v_o, v_p)` in the input, `v_o < v_p`.
    pub merged: (NodeId, NodeId),
    /// Index of the merged node in the output.
    pub result: NodeId,
    /// `1 + t_op`, the number of edges the merge removed.
    pub removed_edges: usize,
}

/// Which NodeSam stages to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeSamVariant {
    SplitOnly,
    MergeOnly,
    /// Split then merge, without the adjustment.
    Base,
    #[default]
    Full,
}

impl std::str::FromStr for NodeSamVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "split-only" => Ok(Self::SplitOnly),
            "merge-only" => Ok(Self::MergeOnly),
            "base" => Ok(Self::Base),
            "full" => Ok(Self::Full),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant `{other}`"
            ))),
        }
    }
}

/// Splits a uniformly chosen node into two adjacent copies, handing each
/// incident edge to one of them by a fair coin.
pub fn split(g: &Graph, rng: &mut Rng) -> Result<SplitOutcome> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let target = rng.random_range(0..n);
    split_at(g, target, rng)
}

/// [`split`] with a fixed target.
pub fn split_at(g: &Graph, target: NodeId, rng: &mut Rng) -> Result<SplitOutcome> {
    g.check_node(target)?;
    let n = g.node_count();
    let (vj, vk) = (target, n);
    let mut remove = Vec::new();
    let mut add = vec![(vj, vk)];
    for &u in g.neighbors(target) {
        if !rng.random_bool(0.5) {
            remove.push((u, vj));
            add.push((u, vk));
        }
    }

    let dim = g.feature_dim();
    let mut features = Vec::with_capacity((n + 1) * dim);
    features.extend_from_slice(g.features());
    features.extend_from_slice(g.feature_row(target));

    Ok(SplitOutcome {
        graph: g.patched(n + 1, &remove, &add, features, g.label()),
        target,
        children: (vj, vk),
    })
}

/// Expected number of compensating edges for a split target with
/// `triangles` triangles and `degree` neighbors, clamped at zero.
pub fn compute_h(triangles: usize, degree: usize, nodes: usize, edges: usize) -> Result<f64> {
    if degree == 0 {
        if triangles > 0 {
            return Err(Error::InvalidParameter(
                "a node without neighbors cannot sit on a triangle".into(),
            ));
        }
        return Ok(0.0);
    }
    let t = triangles as f64;
    let c = edges as f64 - 3.0 * t / degree as f64 - 2.0;
    let disc = c * c + 4.0 * t * nodes as f64 - 6.0 * t;
    if disc < 0.0 {
        return Ok(0.0);
    }
    Ok((0.5 * (disc.sqrt() - c)).max(0.0))
}

/// Connects each sampled triangle partner of the split target to the child
/// it is not yet adjacent to.
pub fn adjust(g: &Graph, split: &SplitOutcome, rng: &mut Rng) -> Result<AdjustOutcome> {
    let target = split.target;
    g.check_node(target)?;
    let degree = g.degree(target);
    if degree == 0 {
        return Ok(AdjustOutcome {
            graph: split.graph.clone(),
            params: AdjustParams::noop(0),
        });
    }
    let tri = triangles_at(g, target)?;
    if tri.count == 0 {
        return Ok(AdjustOutcome {
            graph: split.graph.clone(),
            params: AdjustParams::noop(degree),
        });
    }
    let h = compute_h(tri.count, degree, g.node_count(), g.edge_count())?;
    let t = tri.count as f64;
    let c = g.edge_count() as f64 - 3.0 * t / degree as f64 - 2.0;
    let candidates: Vec<NodeId> = tri.nodes.into_iter().filter(|&u| u != target).collect();
    let p = (h / candidates.len() as f64).min(1.0);
    let chosen: Vec<NodeId> = candidates
        .iter()
        .copied()
        .filter(|_| rng.random::<f64>() < p)
        .collect();

    let (vj, vk) = split.children;
    let prev = &split.graph;
    let add: Vec<(NodeId, NodeId)> = chosen
        .iter()
        .map(|&u| (u, if prev.has_edge(u, vk) { vj } else { vk }))
        .collect();
    let graph = prev.patched(
        prev.node_count(),
        &[],
        &add,
        prev.features().to_vec(),
        prev.label(),
    );
    Ok(AdjustOutcome {
        graph,
        params: AdjustParams {
            triangles: tri.count,
            degree,
            c,
            h,
            candidates,
            chosen,
        },
    })
}

/// Merges the endpoints of a uniformly chosen edge into one node carrying
/// their mean feature; parallel edges created by the merge collapse.
pub fn merge(g: &Graph, rng: &mut Rng) -> Result<MergeOutcome> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let (a, b) = g.half_edge(rng.random_range(0..2 * g.edge_count()));
    let (o, p) = (a.min(b), a.max(b));
    let shared = common_neighbors(g, o, p)?.len();
    let n = g.node_count();
    let dim = g.feature_dim();
    let mut features = Vec::with_capacity((n - 1) * dim);
    for v in 0..n {
        if v == p {
            continue;
        }
        if v == o {
            let (xo, xp) = (g.feature_row(o), g.feature_row(p));
            features.extend(xo.iter().zip(xp).map(|(x, y)| (x + y) / 2.0));
        } else {
            features.extend_from_slice(g.feature_row(v));
        }
    }

    let graph = g.contracted(o, p, features);
    debug_assert_eq!(graph.edge_count(), g.edge_count() - 1 - shared);
    Ok(MergeOutcome {
        graph,
        merged: (o, p),
        result: o,
        removed_edges: 1 + shared,
    })
}

/// Every intermediate of one NodeSam run.
#[derive(Clone, Debug)]
pub struct NodeSamTrace {
    pub split: SplitOutcome,
    pub adjust: AdjustOutcome,
    pub merge: MergeOutcome,
}

pub fn nodesam_traced(g: &Graph, rng: &mut Rng) -> Result<NodeSamTrace> {
    let split = split(g, rng)?;
    let adjust = adjust(g, &split, rng)?;
    let merge = merge(&adjust.graph, rng)?;
    Ok(NodeSamTrace {
        split,
        adjust,
        merge,
    })
}

/// Split, adjust, merge. The node count and the label are preserved.
pub fn nodesam(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    nodesam_traced(g, rng).map(|t| t.merge.graph)
}

pub fn nodesam_variant(g: &Graph, variant: NodeSamVariant, rng: &mut Rng) -> Result<Graph> {
    match variant {
        NodeSamVariant::SplitOnly => split(g, rng).map(|s| s.graph),
        NodeSamVariant::MergeOnly => merge(g, rng).map(|m| m.graph),
        NodeSamVariant::Base => {
            let s = split(g, rng)?;
            merge(&s.graph, rng).map(|m| m.graph)
        }
        NodeSamVariant::Full => nodesam(g, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_triangles, is_connected};
    use crate::rng::stream;

    fn complete(n: usize) -> Graph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        Graph::from_edges(n, &e).unwrap()
    }

    fn with_onehot(g: Graph, dim: usize) -> Graph {
        let n = g.node_count();
        let mut x = vec![0.0; n * dim];
        for v in 0..n {
            x[v * dim + v % dim] = 1.0;
        }
        g.with_features(x, dim).unwrap()
    }

    #[test]
    fn eq1_hand_values() {
        assert_eq!(compute_h(0, 2, 4, 5).unwrap(), 0.0);
        assert!((compute_h(1, 2, 3, 3).unwrap() - 1.5).abs() < 1e-12);
        let expected = 0.5 * (31f64.sqrt() - 1.0);
        assert!((compute_h(3, 3, 4, 6).unwrap() - expected).abs() < 1e-12);
        assert!((compute_h(3, 3, 4, 6).unwrap() - 2.28388).abs() < 1e-5);
        assert!(compute_h(1, 0, 3, 3).is_err());
    }

    #[test]
    fn split_sizes_and_features() {
        let single = with_onehot(Graph::from_edges(1, &[]).unwrap(), 2);
        let s = split(&single, &mut stream(1, 0, 0)).unwrap();
        assert_eq!((s.graph.node_count(), s.graph.edge_count()), (2, 1));

        let k3 = with_onehot(complete(3), 3);
        for t in 0..20 {
            let s = split(&k3, &mut stream(2, 0, t)).unwrap();
            assert_eq!((s.graph.node_count(), s.graph.edge_count()), (4, 4));
            let (j, k) = s.children;
            assert!(s.graph.has_edge(j, k));
            assert_eq!(s.graph.feature_row(j), k3.feature_row(s.target));
            assert_eq!(s.graph.feature_row(k), k3.feature_row(s.target));
        }
    }

    #[test]
    fn adjust_is_noop_without_triangles() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let mut rng = stream(3, 0, 0);
        let s = split(&path, &mut rng).unwrap();
        let a = adjust(&path, &s, &mut rng).unwrap();
        assert!(a.graph.same_topology(&s.graph));
        assert!(a.params.chosen.is_empty());
    }

    #[test]
    fn adjust_on_k3_uses_three_quarter_probability() {
        let k3 = complete(3);
        let mut rng = stream(4, 0, 0);
        let s = split(&k3, &mut rng).unwrap();
        let a = adjust(&k3, &s, &mut rng).unwrap();
        assert_eq!(a.params.candidates.len(), 2);
        assert!((a.params.inclusion_probability() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn every_adjust_edge_closes_a_child_triangle() {
        let k5 = complete(5);
        for t in 0..200 {
            let mut rng = stream(5, 0, t);
            let s = split(&k5, &mut rng).unwrap();
            let a = adjust(&k5, &s, &mut rng).unwrap();
            let (j, k) = s.children;
            for &u in &a.params.chosen {
                assert!(a.graph.has_edge(u, j) && a.graph.has_edge(u, k));
            }
            assert_eq!(
                a.graph.edge_count(),
                s.graph.edge_count() + a.params.chosen.len()
            );
        }
    }

    #[test]
    fn merge_examples() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let m = merge(&k2, &mut stream(6, 0, 0)).unwrap();
        assert_eq!((m.graph.node_count(), m.graph.edge_count()), (1, 0));

        let k3 = complete(3);
        for t in 0..10 {
            let m = merge(&k3, &mut stream(6, 1, t)).unwrap();
            assert_eq!((m.graph.node_count(), m.graph.edge_count()), (2, 1));
            assert_eq!(m.removed_edges, 2);
        }

        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let m = merge(&path, &mut stream(6, 2, 0)).unwrap();
        assert_eq!((m.graph.node_count(), m.graph.edge_count()), (2, 1));
        assert!(matches!(
            merge(&Graph::from_edges(2, &[]).unwrap(), &mut stream(6, 3, 0)),
            Err(Error::EdgelessGraph)
        ));
    }

    #[test]
    fn merge_averages_features() {
        let g = Graph::new(2, &[(0, 1)], vec![1.0, 0.0, 0.0, 1.0], 2, None).unwrap();
        let m = merge(&g, &mut stream(7, 0, 0)).unwrap();
        assert_eq!(m.graph.feature_row(0), &[0.5, 0.5]);
    }

    #[test]
    fn pipeline_preserves_nodes_label_and_connectivity() {
        let g = with_onehot(complete(5), 3).with_label(Some(1));
        for t in 0..100 {
            let out = nodesam(&g, &mut stream(8, 0, t)).unwrap();
            assert_eq!(out.node_count(), 5);
            assert_eq!(out.label(), Some(1));
            assert!(is_connected(&out).unwrap());
        }
        let single = Graph::from_edges(1, &[]).unwrap();
        assert_eq!(
            nodesam(&single, &mut stream(8, 1, 0)).unwrap().node_count(),
            1
        );
        assert!(matches!(
            nodesam(&Graph::from_edges(0, &[]).unwrap(), &mut stream(8, 2, 0)),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn variants_have_fixed_edge_deltas() {
        let g = complete(4);
        let tree = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        for t in 0..50 {
            let s = nodesam_variant(&g, NodeSamVariant::SplitOnly, &mut stream(9, 0, t)).unwrap();
            assert_eq!(s.edge_count(), 7);
            let m =
                nodesam_variant(&tree, NodeSamVariant::MergeOnly, &mut stream(9, 1, t)).unwrap();
            assert_eq!(m.edge_count(), 2);
            let b = nodesam_variant(&g, NodeSamVariant::Base, &mut stream(9, 2, t)).unwrap();
            assert_eq!(b.node_count(), 4);
        }
        assert!(count_triangles(&g) > 0);
        assert_eq!(
            "merge-only".parse::<NodeSamVariant>().unwrap(),
            NodeSamVariant::MergeOnly
        );
        assert!("half".parse::<NodeSamVariant>().is_err());
    }
}
