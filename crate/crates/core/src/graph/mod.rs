//! Immutable undirected simple graphs with a dense node-feature matrix.
//!
//! Adjacency is stored in compressed sparse row form with every neighbor
//! list sorted ascending, so edge lookups are binary searches and the
//! canonical `(min, max)` edge order falls out of a row-major scan.

mod edit;
mod traverse;
mod triangles;

pub use traverse::{
    bfs_order, component_labels, connected_component, induced_is_connected, induced_subgraph,
    is_connected,
};
pub use triangles::{
    common_neighbors, count_triangles, triangle_stats, triangles_at, TriangleNeighborhood,
    TriangleStats,
};

pub(crate) use edit::RowBuilder;

use crate::error::{Error, Result};

/// Node index within a single graph.
pub type NodeId = usize;

/// An undirected simple graph `G = (V, E, X)` with an optional class label.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    offsets: Vec<usize>,
    adj: Vec<NodeId>,
    features: Vec<f64>,
    dim: usize,
    label: Option<usize>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicate
    /// edges (in either orientation) and out-of-range endpoints.
    ///
    /// `features` is row-major with `node_count * dim` entries.
    pub fn new(
        node_count: usize,
        edges: &[(NodeId, NodeId)],
        features: Vec<f64>,
        dim: usize,
        label: Option<usize>,
    ) -> Result<Self> {
        check_features(node_count, dim, &features)?;
        for &(u, v) in edges {
            check_endpoint(u, node_count)?;
            check_endpoint(v, node_count)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
        }
        let (offsets, adj) = build_csr(node_count, edges, false)?;
        Ok(Self {
            offsets,
            adj,
            features,
            dim,
            label,
        })
    }

    /// Structure-only graph with a zero-width feature matrix and no label.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        Self::new(node_count, edges, Vec::new(), 0, None)
    }

    /// Internal constructor for edge lists that are known to be in range and
    /// loop-free; parallel edges are collapsed.
    pub(crate) fn assemble(
        node_count: usize,
        edges: &[(NodeId, NodeId)],
        features: Vec<f64>,
        dim: usize,
        label: Option<usize>,
    ) -> Self {
        debug_assert_eq!(features.len(), node_count * dim);
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| u != v && u < node_count && v < node_count));
        let (offsets, adj) = build_csr(node_count, edges, true).expect("dedup build cannot fail");
        Self {
            offsets,
            adj,
            features,
            dim,
            label,
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.node_count() == 0
    }

    pub fn feature_dim(&self) -> usize {
        self.dim
    }

    /// Row-major feature matrix.
    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn feature_row(&self, v: NodeId) -> &[f64] {
        &self.features[v * self.dim..(v + 1) * self.dim]
    }

    pub fn label(&self) -> Option<usize> {
        self.label
    }

    pub fn with_label(mut self, label: Option<usize>) -> Self {
        self.label = label;
        self
    }

    /// Replaces the feature matrix, keeping topology and label.
    pub fn with_features(mut self, features: Vec<f64>, dim: usize) -> Result<Self> {
        check_features(self.node_count(), dim, &features)?;
        self.features = features;
        self.dim = dim;
        Ok(self)
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Edges as canonical `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Returns the `i`-th edge (`0 <= i < 2|E|`) of the directed half-edge
    /// list; drawing `i` uniformly draws an undirected edge uniformly.
    pub(crate) fn half_edge(&self, i: usize) -> (NodeId, NodeId) {
        // offsets is non-decreasing; find the row containing slot i.
        let u = self.offsets.partition_point(|&o| o <= i) - 1;
        (u, self.adj[i])
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        check_endpoint(v, self.node_count())
    }

    /// Structural equality ignoring features and label.
    pub fn same_topology(&self, other: &Graph) -> bool {
        self.offsets == other.offsets && self.adj == other.adj
    }
}

fn check_endpoint(v: NodeId, node_count: usize) -> Result<()> {
    if v >= node_count {
        Err(Error::NodeOutOfRange {
            node: v,
            node_count,
        })
    } else {
        Ok(())
    }
}

fn check_features(rows: usize, dim: usize, features: &[f64]) -> Result<()> {
    if features.len() != rows * dim {
        return Err(Error::FeatureShape {
            rows,
            dim,
            actual: features.len(),
        });
    }
    Ok(())
}

/// Counting-sort CSR construction, linear in `n + |E|` plus per-row sorts.
fn build_csr(
    n: usize,
    edges: &[(NodeId, NodeId)],
    dedup: bool,
) -> Result<(Vec<usize>, Vec<NodeId>)> {
    let mut offsets = vec![0usize; n + 1];
    for &(u, v) in edges {
        offsets[u + 1] += 1;
        offsets[v + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets.clone();
    let mut adj = vec![0; offsets[n]];
    for &(u, v) in edges {
        adj[cursor[u]] = v;
        cursor[u] += 1;
        adj[cursor[v]] = u;
        cursor[v] += 1;
    }
    let mut has_dup = false;
    for u in 0..n {
        let row = &mut adj[offsets[u]..offsets[u + 1]];
        row.sort_unstable();
        if let Some(w) = row.windows(2).find(|w| w[0] == w[1]) {
            if !dedup {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
            has_dup = true;
        }
    }
    if !has_dup {
        return Ok((offsets, adj));
    }
    let mut packed = Vec::with_capacity(adj.len());
    let mut packed_offsets = Vec::with_capacity(n + 1);
    packed_offsets.push(0);
    for u in 0..n {
        let row = &adj[offsets[u]..offsets[u + 1]];
        let start = packed.len();
        for &v in row {
            if packed.len() == start || packed[packed.len() - 1] != v {
                packed.push(v);
            }
        }
        packed_offsets.push(packed.len());
    }
    Ok((packed_offsets, packed))
}

/// A labeled collection of graphs sharing feature width and label space.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphSet {
    graphs: Vec<Graph>,
    num_classes: usize,
    feature_dim: usize,
}

impl GraphSet {
    /// Every graph must carry a label below `num_classes` and a feature
    /// matrix of width `feature_dim`.
    pub fn new(graphs: Vec<Graph>, num_classes: usize, feature_dim: usize) -> Result<Self> {
        if num_classes == 0 {
            return Err(Error::InvalidParameter(
                "num_classes must be positive".into(),
            ));
        }
        for (index, g) in graphs.iter().enumerate() {
            let label = g.label().ok_or(Error::MissingLabel { index })?;
            if label >= num_classes {
                return Err(Error::LabelOutOfRange { label, num_classes });
            }
            if g.feature_dim() != feature_dim {
                return Err(Error::FeatureDimMismatch(g.feature_dim(), feature_dim));
            }
        }
        Ok(Self {
            graphs,
            num_classes,
            feature_dim,
        })
    }

    pub fn graphs(&self) -> &[Graph] {
        &self.graphs
    }

    pub fn get(&self, i: usize) -> Option<&Graph> {
        self.graphs.get(i)
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn feature_dim(&self) -> usize {
        self.feature_dim
    }

    /// Class index of graph `i`.
    pub fn label(&self, i: usize) -> usize {
        self.graphs[i].label().expect("validated at construction")
    }

    pub fn labels(&self) -> Vec<usize> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn into_graphs(self) -> Vec<Graph> {
        self.graphs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_edges() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 0)]),
            Err(Error::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::NodeOutOfRange { node: 3, .. })
        ));
        assert!(matches!(
            Graph::new(2, &[], vec![1.0], 1, None),
            Err(Error::FeatureShape { .. })
        ));
    }

    #[test]
    fn canonical_edges_and_degree_sum() {
        let g = Graph::from_edges(4, &[(3, 1), (0, 2), (1, 0)]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 3)]);
        let deg_sum: usize = (0..4).map(|v| g.degree(v)).sum();
        assert_eq!(deg_sum, 2 * g.edge_count());
        assert!(g.has_edge(3, 1) && !g.has_edge(2, 3));
    }

    #[test]
    fn assemble_collapses_parallel_edges() {
        let g = Graph::assemble(3, &[(0, 1), (1, 0), (1, 2), (2, 1)], Vec::new(), 0, None);
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn half_edges_cover_each_edge_twice() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut seen = vec![0; 3];
        for i in 0..2 * g.edge_count() {
            let (u, v) = g.half_edge(i);
            let e = g.edges().position(|e| e == (u.min(v), u.max(v))).unwrap();
            seen[e] += 1;
        }
        assert_eq!(seen, vec![2, 2, 2]);
    }

    #[test]
    fn graph_set_validates_labels() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            GraphSet::new(vec![g.clone()], 2, 0),
            Err(Error::MissingLabel { index: 0 })
        ));
        assert!(matches!(
            GraphSet::new(vec![g.clone().with_label(Some(2))], 2, 0),
            Err(Error::LabelOutOfRange { .. })
        ));
        let set = GraphSet::new(vec![g.with_label(Some(1))], 2, 0).unwrap();
        assert_eq!(set.labels(), vec![1]);
    }
}
