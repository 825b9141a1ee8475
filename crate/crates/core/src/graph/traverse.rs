use std::collections::VecDeque;

use super::edit::RowBuilder;
use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Breadth-first visitation order from `root`, restricted to its
/// component. Frontier ties go to the smaller node index.
pub fn bfs_order(g: &Graph, root: NodeId) -> Result<Vec<NodeId>> {
    g.check_node(root)?;
    let mut seen = vec![false; g.node_count()];
    let mut order = vec![root];
    seen[root] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    Ok(order)
}

/// Sorted node set of the component containing `root`.
pub fn connected_component(g: &Graph, root: NodeId) -> Result<Vec<NodeId>> {
    let mut nodes = bfs_order(g, root)?;
    nodes.sort_unstable();
    Ok(nodes)
}

pub fn is_connected(g: &Graph) -> Result<bool> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(bfs_order(g, 0)?.len() == g.node_count())
}

/// Component id per node (ids assigned in order of smallest member) and the
/// number of components.
pub fn component_labels(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.node_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = count;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if label[v] == usize::MAX {
                    label[v] = count;
                    queue.push_back(v);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Whether the subgraph induced by `nodes` is connected. The empty set and
/// singletons count as connected.
pub fn induced_is_connected(g: &Graph, nodes: &[NodeId]) -> bool {
    if nodes.len() <= 1 {
        return true;
    }
    let mut member = vec![false; g.node_count()];
    for &v in nodes {
        member[v] = true;
    }
    let mut stack = vec![nodes[0]];
    member[nodes[0]] = false;
    let mut reached = 1;
    while let Some(u) = stack.pop() {
        for &v in g.neighbors(u) {
            if member[v] {
                member[v] = false;
                reached += 1;
                stack.push(v);
            }
        }
    }
    reached == nodes.len()
}

/// Vertex-induced subgraph; node `nodes[i]` becomes node `i`. Features and
/// label are carried over.
pub fn induced_subgraph(g: &Graph, nodes: &[NodeId]) -> Result<Graph> {
    let mut index = vec![usize::MAX; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        g.check_node(v)?;
        if index[v] != usize::MAX {
            return Err(Error::InvalidParameter(format!("node {v} listed twice")));
        }
        index[v] = i;
    }
    let monotone = nodes.windows(2).all(|w| w[0] < w[1]);
    let mut b = RowBuilder::with_capacity(nodes.len(), 0);
    let mut row = Vec::new();
    for &v in nodes {
        row.clear();
        row.extend(
            g.neighbors(v)
                .iter()
                .map(|&w| index[w])
                .filter(|&j| j != usize::MAX),
        );
        if monotone {
            b.push_row(&row);
        } else {
            b.push_unsorted(row.iter().copied());
        }
    }
    let dim = g.feature_dim();
    let mut features = Vec::with_capacity(nodes.len() * dim);
    for &v in nodes {
        features.extend_from_slice(g.feature_row(v));
    }
    Ok(b.finish(features, dim, g.label()))
}
