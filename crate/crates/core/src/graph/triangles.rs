use super::{Graph, NodeId};
use crate::error::{Error, Result};

/// Triangle counts of a graph at the global, node and edge level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleStats {
    pub total: usize,
    /// `per_node[i]` is the number of triangles containing node `i`.
    pub per_node: Vec<usize>,
    /// Triangles containing each edge, in canonical edge order.
    pub per_edge: Vec<((NodeId, NodeId), usize)>,
}

/// Triangles through one node together with every node they touch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleNeighborhood {
    pub count: usize,
    /// Sorted node set including the center; empty when `count == 0`.
    pub nodes: Vec<NodeId>,
}

fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// Exact number of 3-cliques.
pub fn count_triangles(g: &Graph) -> usize {
    let mut total = 0;
    for u in 0..g.node_count() {
        let nu = g.neighbors(u);
        for &v in nu.iter().filter(|&&v| v > u) {
            // only count w > v so each triangle is seen once
            let nv = g.neighbors(v);
            let a = &nu[nu.partition_point(|&w| w <= v)..];
            let b = &nv[nv.partition_point(|&w| w <= v)..];
            total += intersection_size(a, b);
        }
    }
    total
}

pub fn triangle_stats(g: &Graph) -> TriangleStats {
    let mut per_node = vec![0; g.node_count()];
    let mut per_edge = Vec::with_capacity(g.edge_count());
    let mut sum = 0;
    for (u, v) in g.edges() {
        let c = intersection_size(g.neighbors(u), g.neighbors(v));
        per_node[u] += c;
        per_node[v] += c;
        sum += c;
        per_edge.push(((u, v), c));
    }
    // each triangle at node i is seen through both of its edges at i
    for t in &mut per_node {
        *t /= 2;
    }
    TriangleStats {
        total: sum / 3,
        per_node,
        per_edge,
    }
}

/// Triangles containing `v` and the union of their nodes.
pub fn triangles_at(g: &Graph, v: NodeId) -> Result<TriangleNeighborhood> {
    g.check_node(v)?;
    let nv = g.neighbors(v);
    let mut twice = 0;
    let mut nodes = Vec::new();
    for &u in nv {
        let c = intersection_size(nv, g.neighbors(u));
        if c > 0 {
            twice += c;
            nodes.push(u);
        }
    }
    if twice == 0 {
        return Ok(TriangleNeighborhood {
            count: 0,
            nodes: Vec::new(),
        });
    }
    let pos = nodes.partition_point(|&u| u < v);
    nodes.insert(pos, v);
    Ok(TriangleNeighborhood {
        count: twice / 2,
        nodes,
    })
}

/// Sorted common neighbors of two distinct nodes.
pub fn common_neighbors(g: &Graph, u: NodeId, v: NodeId) -> Result<Vec<NodeId>> {
    g.check_node(u)?;
    g.check_node(v)?;
    if u == v {
        return Err(Error::InvalidParameter(
            "common neighbors need two distinct nodes".into(),
        ));
    }
    let (a, b) = (g.neighbors(u), g.neighbors(v));
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    Ok(out)
}
