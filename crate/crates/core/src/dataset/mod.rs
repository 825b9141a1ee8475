//! Dataset loading, writing, synthetic generators, summary statistics and
//! stratified folds.

mod tudataset;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::Serialize;

pub use tudataset::{
    load_soft_labels, load_tudataset, load_tudataset_report, write_dataset, FeatureSource,
    LoadReport,
};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSet};
use crate::rng::Rng;

/// Replaces node features with a one-hot of the node degree's rank among
/// the distinct degrees present anywhere in the set.
pub fn degree_onehot(set: &GraphSet) -> Result<GraphSet> {
    let distinct: Vec<usize> = set
        .graphs()
        .iter()
        .flat_map(|g| (0..g.node_count()).map(move |v| g.degree(v)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dim = distinct.len();
    let graphs = set
        .graphs()
        .iter()
        .map(|g| {
            let mut x = vec![0.0; g.node_count() * dim];
            for v in 0..g.node_count() {
                let r = distinct
                    .binary_search(&g.degree(v))
                    .expect("degree is present");
                x[v * dim + r] = 1.0;
            }
            g.clone().with_features(x, dim)
        })
        .collect::<Result<Vec<_>>>()?;
    GraphSet::new(graphs, set.num_classes(), dim)
}

/// Erdos-Renyi `G(n, m)`: exactly `m` distinct edges chosen uniformly.
pub fn gen_er(n: usize, m: usize, rng: &mut Rng) -> Result<Graph> {
    let max = n as u64 * n.saturating_sub(1) as u64 / 2;
    if m as u64 > max {
        return Err(Error::InfeasibleEdgeCount {
            nodes: n,
            edges: m as u64,
        });
    }
    let dense = 2 * m as u64 > max;
    // sample the complement when more than half of all pairs are wanted
    let target = if dense { (max - m as u64) as usize } else { m };
    let mut seen = HashSet::with_capacity(target);
    let mut picked = Vec::with_capacity(target);
    while picked.len() < target {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u == v {
            continue;
        }
        let e = (u.min(v), u.max(v));
        if seen.insert(e) {
            picked.push(e);
        }
    }
    if dense {
        let mut all = Vec::with_capacity(m);
        for u in 0..n {
            for v in u + 1..n {
                if !seen.contains(&(u, v)) {
                    all.push((u, v));
                }
            }
        }
        picked = all;
    }
    Graph::from_edges(n, &picked)
}

/// Random one-hot rows of width `dim`.
pub fn random_onehot(g: &Graph, dim: usize, rng: &mut Rng) -> Result<Graph> {
    if dim == 0 {
        return Err(Error::FeatureDimTooSmall(0));
    }
    let n = g.node_count();
    let mut x = vec![0.0; n * dim];
    for v in 0..n {
        x[v * dim + rng.random_range(0..dim)] = 1.0;
    }
    g.clone().with_features(x, dim)
}

/// Dataset summary totals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DatasetStats {
    pub num_graphs: usize,
    pub total_nodes: usize,
    /// Undirected edges.
    pub total_edges: usize,
    /// Lines an adjacency file lists, each edge once per direction.
    pub directed_edges: usize,
    pub feature_dim: usize,
    /// Distinct labels present.
    pub num_labels: usize,
}

impl DatasetStats {
    pub fn compute(set: &GraphSet) -> Self {
        let total_nodes = set.graphs().iter().map(Graph::node_count).sum();
        let total_edges: usize = set.graphs().iter().map(Graph::edge_count).sum();
        let labels: HashSet<usize> = set.labels().into_iter().collect();
        Self {
            num_graphs: set.len(),
            total_nodes,
            total_edges,
            directed_edges: 2 * total_edges,
            feature_dim: set.feature_dim(),
            num_labels: labels.len(),
        }
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (
            self.num_graphs,
            self.total_nodes,
            self.total_edges,
            self.feature_dim,
            self.num_labels,
        )
    }
}

impl fmt::Display for DatasetStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graphs          {}", self.num_graphs)?;
        writeln!(f, "nodes           {}", self.total_nodes)?;
        writeln!(f, "edges           {}", self.total_edges)?;
        writeln!(f, "directed edges  {}", self.directed_edges)?;
        writeln!(f, "features        {}", self.feature_dim)?;
        write!(f, "labels          {}", self.num_labels)
    }
}

/// Fold index in `0..k` for every graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FoldSplit {
    pub k: usize,
    pub assignment: Vec<usize>,
}

impl FoldSplit {
    /// Graph indices of fold `f`, ascending.
    pub fn fold(&self, f: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == f)
            .collect()
    }
}

/// Stratified `k`-fold split. Each class is shuffled and dealt round-robin,
/// continuing where the previous class stopped, so fold sizes differ by at
/// most one overall and within every class.
pub fn make_folds(set: &GraphSet, k: usize, rng: &mut Rng) -> Result<FoldSplit> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 folds, got {k}"
        )));
    }
    if set.len() < k {
        return Err(Error::TooFewGraphs {
            needed: k,
            actual: set.len(),
        });
    }
    let mut by_class = vec![Vec::new(); set.num_classes()];
    for (i, y) in set.labels().into_iter().enumerate() {
        by_class[y].push(i);
    }
    let mut assignment = vec![0; set.len()];
    let mut next = 0;
    for mut members in by_class {
        members.shuffle(rng);
        for i in members {
            assignment[i] = next;
            next = (next + 1) % k;
        }
    }
    Ok(FoldSplit { k, assignment })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;

    #[test]
    fn er_has_exact_edge_count() {
        let mut r = rng::master(3);
        for (n, m) in [(10, 0), (10, 12), (10, 40), (10, 45), (200, 600)] {
            let g = gen_er(n, m, &mut r).unwrap();
            assert_eq!((g.node_count(), g.edge_count()), (n, m));
        }
        assert!(matches!(
            gen_er(4, 7, &mut r),
            Err(Error::InfeasibleEdgeCount { .. })
        ));
    }

    #[test]
    fn folds_partition_and_stratify() {
        let graphs = (0..20)
            .map(|i| {
                Graph::from_edges(2, &[(0, 1)])
                    .unwrap()
                    .with_label(Some(usize::from(i % 4 == 0)))
            })
            .collect();
        let set = GraphSet::new(graphs, 2, 0).unwrap();
        let split = make_folds(&set, 5, &mut rng::master(1)).unwrap();
        assert!(split.assignment.iter().all(|&f| f < 5));
        for f in 0..5 {
            let members = split.fold(f);
            assert_eq!(members.len(), 4);
            assert_eq!(members.iter().filter(|&&i| i % 4 == 0).count(), 1);
        }
        assert_eq!(split, make_folds(&set, 5, &mut rng::master(1)).unwrap());
        assert!(make_folds(&set, 21, &mut rng::master(1)).is_err());
    }

    #[test]
    fn stats_totals() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let set = GraphSet::new(vec![k3.with_label(Some(1))], 3, 0).unwrap();
        assert_eq!(DatasetStats::compute(&set).as_tuple(), (1, 3, 3, 0, 1));
        assert_eq!(DatasetStats::compute(&set).directed_edges, 6);
        let empty = GraphSet::new(Vec::new(), 2, 0).unwrap();
        assert_eq!(DatasetStats::compute(&empty).as_tuple(), (0, 0, 0, 0, 0));
    }

    #[test]
    fn degree_onehot_uses_degree_rank() {
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let set = GraphSet::new(
            vec![k3.clone().with_label(Some(0)), k3.with_label(Some(0))],
            1,
            0,
        )
        .unwrap();
        let d = degree_onehot(&set).unwrap();
        assert_eq!(d.feature_dim(), 1);
        assert!(d
            .graphs()
            .iter()
            .all(|g| g.features().iter().all(|&x| x == 1.0)));

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let set = GraphSet::new(
            vec![star.with_label(Some(0)), path.with_label(Some(0))],
            1,
            0,
        )
        .unwrap();
        let d = degree_onehot(&set).unwrap();
        // degrees {1, 2, 3}
        assert_eq!(d.feature_dim(), 3);
        assert_eq!(d.graphs()[0].feature_row(0), &[0.0, 0.0, 1.0]);
        assert_eq!(d.graphs()[1].feature_row(1), &[0.0, 1.0, 0.0]);
    }
}
