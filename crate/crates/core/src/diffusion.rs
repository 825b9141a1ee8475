//! Personalized PageRank scoring and connected top-k node selection.
//!
//! Scores are one column of `S = sum_k alpha (1 - alpha)^k (D^-1/2 A D^-1/2)^k`,
//! accumulated by iterating the personalized vector; the full matrix is
//! never formed.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bfs_order, induced_is_connected, Graph, NodeId};

pub const DEFAULT_ALPHA: f64 = 0.15;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiffusionConfig {
    /// Teleport probability.
    pub alpha: f64,
    /// Stop once the L1 mass added by one more series term drops below this.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for DiffusionConfig {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiffusionScores {
    pub root: NodeId,
    pub scores: Vec<f64>,
    pub alpha: f64,
    /// Series terms accumulated after the `k = 0` teleport term.
    pub iterations: usize,
}

/// How an [`OrderedNodeSet`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionSource {
    Diffusion,
    BfsFallback,
    Random,
}

/// Rank-ordered distinct nodes; `nodes[0]` is the root whenever non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedNodeSet {
    pub root: NodeId,
    pub nodes: Vec<NodeId>,
    pub source: SelectionSource,
}

impl OrderedNodeSet {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Personalized PageRank column for `root`.
pub fn ppr_column(g: &Graph, root: NodeId, cfg: &DiffusionConfig) -> Result<DiffusionScores> {
    g.check_node(root)?;
    if !(cfg.alpha > 0.0 && cfg.alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1), got {}",
            cfg.alpha
        )));
    }
    let n = g.node_count();
    let inv_sqrt: Vec<f64> = (0..n)
        .map(|v| match g.degree(v) {
            0 => 0.0,
            d => 1.0 / (d as f64).sqrt(),
        })
        .collect();

    // `scaled` holds D^{-1/2} times the current power M^k e_r
    let mut scaled = vec![0.0; n];
    scaled[root] = inv_sqrt[root];
    let mut scores = vec![0.0; n];
    scores[root] = cfg.alpha;
    let mut next = vec![0.0; n];
    let mut coef = cfg.alpha;
    let mut iterations = 0;

    while iterations < cfg.max_iter {
        coef *= 1.0 - cfg.alpha;
        iterations += 1;
        let mut added = 0.0;
        for u in 0..n {
            let s: f64 = g.neighbors(u).iter().map(|&v| scaled[v]).sum();
            let cur = s * inv_sqrt[u];
            let t = coef * cur;
            scores[u] += t;
            added += t;
            next[u] = cur * inv_sqrt[u];
        }
        std::mem::swap(&mut scaled, &mut next);
        if added < cfg.tol {
            break;
        }
    }

    Ok(DiffusionScores {
        root,
        scores,
        alpha: cfg.alpha,
        iterations,
    })
}

fn rank_order(scores: &[f64]) -> impl Fn(&NodeId, &NodeId) -> std::cmp::Ordering + '_ {
    move |&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b))
}

/// The `k` highest-scoring nodes, descending, ties to the smaller index.
pub fn top_k_ordered(scores: &DiffusionScores, k: usize) -> Result<Vec<NodeId>> {
    let n = scores.scores.len();
    if k > n {
        return Err(Error::TooManyNodes {
            requested: k,
            available: n,
        });
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let cmp = rank_order(&scores.scores);
    let mut idx: Vec<NodeId> = (0..n).collect();
    if k < n {
        idx.select_nth_unstable_by(k - 1, &cmp);
        idx.truncate(k);
    }
    idx.sort_unstable_by(&cmp);
    Ok(idx)
}

/// Root first, then the `k - 1` best-scoring other nodes.
fn rooted_top_k(scores: &DiffusionScores, k: usize) -> Vec<NodeId> {
    let root = scores.root;
    let cmp = rank_order(&scores.scores);
    let mut rest: Vec<NodeId> = (0..scores.scores.len()).filter(|&v| v != root).collect();
    let m = k - 1;
    if m > 0 && m < rest.len() {
        rest.select_nth_unstable_by(m - 1, &cmp);
    }
    rest.truncate(m);
    rest.sort_unstable_by(&cmp);
    let mut out = Vec::with_capacity(k);
    out.push(root);
    out.extend(rest);
    out
}

/// `k` connected nodes around `root`, ranked by diffusion score with the
/// root pinned first; falls back to the first `k` BFS nodes when the
/// diffusion selection is not connected.
pub fn sample_connected(
    g: &Graph,
    root: NodeId,
    k: usize,
    cfg: &DiffusionConfig,
) -> Result<OrderedNodeSet> {
    let bfs = bfs_order(g, root)?;
    if k > bfs.len() {
        return Err(Error::TooManyNodes {
            requested: k,
            available: bfs.len(),
        });
    }
    if k == 0 {
        return Ok(OrderedNodeSet {
            root,
            nodes: Vec::new(),
            source: SelectionSource::Diffusion,
        });
    }
    let scores = ppr_column(g, root, cfg)?;
    let nodes = rooted_top_k(&scores, k);
    if induced_is_connected(g, &nodes) {
        return Ok(OrderedNodeSet {
            root,
            nodes,
            source: SelectionSource::Diffusion,
        });
    }
    Ok(OrderedNodeSet {
        root,
        nodes: bfs[..k].to_vec(),
        source: SelectionSource::BfsFallback,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_root_keeps_only_teleport_mass() {
        let g = Graph::from_edges(3, &[(1, 2)]).unwrap();
        let s = ppr_column(&g, 0, &DiffusionConfig::default()).unwrap();
        assert_eq!(s.scores, vec![0.15, 0.0, 0.0]);
    }

    #[test]
    fn k2_closed_form() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cfg = DiffusionConfig::default();
        let s = ppr_column(&g, 0, &cfg).unwrap();
        let a = cfg.alpha;
        // the truncated tail is geometric: at most tol * (1 - a) / a
        let tail = cfg.tol * (1.0 - a) / a;
        assert!((s.scores[0] - 1.0 / (2.0 - a)).abs() <= tail);
        assert!((s.scores[1] - (1.0 - a) / (2.0 - a)).abs() <= tail);
        assert!((s.scores[0] - 0.54054).abs() < 1e-5);
        assert_eq!(top_k_ordered(&s, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn rejects_bad_alpha() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let cfg = DiffusionConfig {
            alpha: 1.0,
            ..Default::default()
        };
        assert!(ppr_column(&g, 0, &cfg).is_err());
    }

    #[test]
    fn top_k_edges() {
        let s = DiffusionScores {
            root: 0,
            scores: vec![0.1, 0.3, 0.3, 0.2],
            alpha: 0.15,
            iterations: 0,
        };
        assert!(top_k_ordered(&s, 0).unwrap().is_empty());
        assert_eq!(top_k_ordered(&s, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(top_k_ordered(&s, 4).unwrap(), vec![1, 2, 3, 0]);
        assert!(top_k_ordered(&s, 5).is_err());
        let flat = DiffusionScores {
            scores: vec![0.5; 4],
            ..s
        };
        assert_eq!(top_k_ordered(&flat, 4).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn sample_connected_examples() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (4, 5)]).unwrap();
        let cfg = DiffusionConfig::default();
        let one = sample_connected(&g, 2, 1, &cfg).unwrap();
        assert_eq!(one.nodes, vec![2]);
        let all = sample_connected(&g, 2, 4, &cfg).unwrap();
        let mut sorted = all.nodes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3]);
        assert_eq!(all.nodes[0], 2);
        assert!(matches!(
            sample_connected(&g, 4, 3, &cfg),
            Err(Error::TooManyNodes { .. })
        ));
    }

    #[test]
    fn falls_back_to_bfs_when_scores_skip_a_gap() {
        // One series term leaves everything beyond distance one at zero,
        // so node 0 wins the tie on index and breaks connectivity.
        let g = Graph::from_edges(6, &[(0, 5), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let cfg = DiffusionConfig {
            max_iter: 1,
            ..Default::default()
        };
        let s = sample_connected(&g, 2, 5, &cfg).unwrap();
        assert_eq!(s.source, SelectionSource::BfsFallback);
        assert_eq!(s.nodes, vec![2, 1, 3, 4, 5]);
    }
}
