//! Comparison augmenters. Each keeps the input's hard label.

use rand::Rng as _;

use crate::diffusion::{sample_connected, DiffusionConfig};
use crate::error::{Error, Result};
use crate::graph::{bfs_order, induced_subgraph, Graph, NodeId};
use crate::rng::Rng;

pub const DEFAULT_RHO: f64 = 0.7;

fn rebuild(g: &Graph, remove: &[(NodeId, NodeId)], add: &[(NodeId, NodeId)]) -> Graph {
    g.patched(
        g.node_count(),
        remove,
        add,
        g.features().to_vec(),
        g.label(),
    )
}

/// Removes one uniformly chosen edge.
pub fn drop_edge(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let (a, b) = g.half_edge(rng.random_range(0..2 * g.edge_count()));
    Ok(rebuild(g, &[(a, b)], &[]))
}

/// Removes one uniformly chosen node and its edges; later indices shift
/// down by one.
pub fn drop_node(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            needed: 2,
            actual: n,
        });
    }
    let v = rng.random_range(0..n);
    let keep: Vec<NodeId> = (0..n).filter(|&u| u != v).collect();
    induced_subgraph(g, &keep)
}

fn uniform_non_edge(g: &Graph, rng: &mut Rng) -> Result<(NodeId, NodeId)> {
    let n = g.node_count() as u64;
    let pairs = n * n.saturating_sub(1) / 2;
    let free = pairs - g.edge_count() as u64;
    if free == 0 {
        return Err(Error::CompleteGraph);
    }
    if 2 * free >= pairs {
        // rejection sampling: at most two draws expected
        loop {
            let u = rng.random_range(0..g.node_count());
            let v = rng.random_range(0..g.node_count());
            if u != v && !g.has_edge(u, v) {
                return Ok((u.min(v), u.max(v)));
            }
        }
    }
    // dense graph: the number of pairs is at most twice the edge count
    let pick = rng.random_range(0..free);
    let mut seen = 0;
    for u in 0..g.node_count() {
        let nbrs = g.neighbors(u);
        let mut it = nbrs.iter().peekable();
        for v in u + 1..g.node_count() {
            while it.next_if(|&&w| w < v).is_some() {}
            if it.next_if(|&&w| w == v).is_some() {
                continue;
            }
            if seen == pick {
                return Ok((u, v));
            }
            seen += 1;
        }
    }
    unreachable!("non-edge count and enumeration disagree")
}

/// Adds one uniformly chosen non-edge.
pub fn add_edge(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    let e = uniform_non_edge(g, rng)?;
    Ok(rebuild(g, &[], &[e]))
}

fn one_hot_index(g: &Graph, v: NodeId) -> Option<usize> {
    let row = g.feature_row(v);
    let mut hot = None;
    for (i, &x) in row.iter().enumerate() {
        if x == 1.0 && hot.is_none() {
            hot = Some(i);
        } else if x != 0.0 {
            return None;
        }
    }
    hot
}

fn move_hot_index(g: &Graph, v: NodeId, rng: &mut Rng) -> Result<Vec<f64>> {
    let d = g.feature_dim();
    if d < 2 {
        return Err(Error::FeatureDimTooSmall(d));
    }
    let hot = one_hot_index(g, v).ok_or(Error::NotOneHot(v))?;
    let mut to = rng.random_range(0..d - 1);
    if to >= hot {
        to += 1;
    }
    let mut features = g.features().to_vec();
    features[v * d + hot] = 0.0;
    features[v * d + to] = 1.0;
    Ok(features)
}

/// Moves the nonzero entry of one uniformly chosen node's one-hot feature
/// to a different uniformly chosen position.
pub fn change_attr(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let v = rng.random_range(0..g.node_count());
    let features = move_hot_index(g, v, rng)?;
    g.clone().with_features(features, g.feature_dim())
}

/// Induced subgraph on `ceil(rho * |component|)` diffusion-selected nodes
/// around a uniform root. Nodes keep their relative order.
pub fn graph_crop(g: &Graph, rho: f64, cfg: &DiffusionConfig, rng: &mut Rng) -> Result<Graph> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "rho must lie in (0, 1], got {rho}"
        )));
    }
    let r = rng.random_range(0..g.node_count());
    let size = bfs_order(g, r)?.len();
    let k = ((rho * size as f64).ceil() as usize).clamp(1, size);
    let mut nodes = sample_connected(g, r, k, cfg)?.nodes;
    nodes.sort_unstable();
    induced_subgraph(g, &nodes)
}

/// Local perturbation around a uniform target `v`: change its attribute
/// (when one-hot), drop one of its edges, then link it to a node exactly
/// two hops away. Stages that have nothing to act on are skipped.
pub fn node_aug(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    let n = g.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            needed: 2,
            actual: n,
        });
    }
    let v = rng.random_range(0..n);
    let features = if g.feature_dim() >= 2 && one_hot_index(g, v).is_some() {
        move_hot_index(g, v, rng)?
    } else {
        g.features().to_vec()
    };

    let mut remove = Vec::new();
    let mut add = Vec::new();
    let mut nbrs: Vec<NodeId> = g.neighbors(v).to_vec();
    if !nbrs.is_empty() {
        let u = nbrs.remove(rng.random_range(0..nbrs.len()));
        remove.push((u, v));
    }

    // two-hop nodes after the drop, sorted for determinism
    let mut near = vec![false; n];
    near[v] = true;
    for &u in &nbrs {
        near[u] = true;
    }
    let mut two_hop: Vec<NodeId> = nbrs
        .iter()
        .flat_map(|&u| g.neighbors(u).iter().copied())
        .filter(|&w| !near[w])
        .collect();
    two_hop.sort_unstable();
    two_hop.dedup();
    if !two_hop.is_empty() {
        let w = two_hop[rng.random_range(0..two_hop.len())];
        add.push((v, w));
    }

    Ok(g.patched(n, &remove, &add, features, g.label()))
}

/// Calls `f` on each open wedge `u - center - w` with `u < w`.
fn for_each_open_wedge(g: &Graph, mut f: impl FnMut(NodeId, NodeId, NodeId) -> bool) {
    for center in 0..g.node_count() {
        let nbrs = g.neighbors(center);
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if !g.has_edge(u, w) && !f(u, center, w) {
                    return;
                }
            }
        }
    }
}

/// Number of open triangles, by global enumeration.
pub fn count_open_triangles(g: &Graph) -> u64 {
    let mut count = 0u64;
    for_each_open_wedge(g, |_, _, _| {
        count += 1;
        true
    });
    count
}

/// Picks an open triangle `u - v - w` uniformly from a global enumeration
/// (`u < w`) and replaces edge `(v, w)` with `(u, w)`.
pub fn motif_swap(g: &Graph, rng: &mut Rng) -> Result<Graph> {
    let total = count_open_triangles(g);
    if total == 0 {
        return Err(Error::NoOpenTriangle);
    }
    let pick = rng.random_range(0..total);
    let mut seen = 0u64;
    let mut wedge = None;
    for_each_open_wedge(g, |u, v, w| {
        if seen == pick {
            wedge = Some((u, v, w));
            return false;
        }
        seen += 1;
        true
    });
    let (u, v, w) = wedge.expect("pick is below the wedge count");
    Ok(rebuild(g, &[(v, w)], &[(u, w)]))
}
