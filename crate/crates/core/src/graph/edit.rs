//! Row-by-row graph rebuilds. Edits touching a few rows copy every other
//! row verbatim, so a rebuild streams through memory once.

use super::{Graph, NodeId};

/// Appends sorted, duplicate-free neighbor rows in node order.
pub(crate) struct RowBuilder {
    offsets: Vec<usize>,
    adj: Vec<NodeId>,
}

impl RowBuilder {
    pub(crate) fn with_capacity(nodes: usize, half_edges: usize) -> Self {
        let mut offsets = Vec::with_capacity(nodes + 1);
        offsets.push(0);
        Self {
            offsets,
            adj: Vec::with_capacity(half_edges),
        }
    }

    pub(crate) fn push_row(&mut self, row: &[NodeId]) {
        debug_assert!(row.windows(2).all(|w| w[0] < w[1]));
        self.adj.extend_from_slice(row);
        self.offsets.push(self.adj.len());
    }

    /// Appends an arbitrary row, sorting and deduplicating it.
    pub(crate) fn push_unsorted(&mut self, row: impl IntoIterator<Item = NodeId>) {
        let start = self.adj.len();
        self.adj.extend(row);
        let tail = &mut self.adj[start..];
        tail.sort_unstable();
        let mut w = start;
        for r in start..self.adj.len() {
            if w == start || self.adj[w - 1] != self.adj[r] {
                self.adj[w] = self.adj[r];
                w += 1;
            }
        }
        self.adj.truncate(w);
        self.offsets.push(self.adj.len());
    }

    pub(crate) fn finish(self, features: Vec<f64>, dim: usize, label: Option<usize>) -> Graph {
        let g = Graph {
            offsets: self.offsets,
            adj: self.adj,
            features,
            dim,
            label,
        };
        debug_assert_eq!(g.features.len(), g.node_count() * dim);
        g
    }
}

/// Both orientations of every edge, sorted and deduplicated.
fn directed(edges: &[(NodeId, NodeId)]) -> Vec<(NodeId, NodeId)> {
    let mut d: Vec<_> = edges.iter().flat_map(|&(u, v)| [(u, v), (v, u)]).collect();
    d.sort_unstable();
    d.dedup();
    d
}

/// Columns of row `u` in a sorted directed list, advancing `cursor`.
fn row_of<'a>(
    list: &'a [(NodeId, NodeId)],
    cursor: &mut usize,
    u: NodeId,
) -> &'a [(NodeId, NodeId)] {
    let start = *cursor;
    while *cursor < list.len() && list[*cursor].0 == u {
        *cursor += 1;
    }
    &list[start..*cursor]
}

impl Graph {
    /// Copy on `node_count >= self.node_count()` nodes with `remove` edges
    /// deleted and `add` edges inserted. Removing an absent edge or adding
    /// a present one is a no-op.
    pub(crate) fn patched(
        &self,
        node_count: usize,
        remove: &[(NodeId, NodeId)],
        add: &[(NodeId, NodeId)],
        features: Vec<f64>,
        label: Option<usize>,
    ) -> Graph {
        debug_assert!(node_count >= self.node_count());
        debug_assert!(add
            .iter()
            .all(|&(u, v)| u != v && u < node_count && v < node_count));
        let rem = directed(remove);
        let ins = directed(add);
        let mut b = RowBuilder::with_capacity(node_count, self.adj.len() + ins.len());
        let (mut rc, mut ic) = (0, 0);
        let mut row = Vec::new();
        for u in 0..node_count {
            let old: &[NodeId] = if u < self.node_count() {
                self.neighbors(u)
            } else {
                &[]
            };
            let r = row_of(&rem, &mut rc, u);
            let a = row_of(&ins, &mut ic, u);
            if r.is_empty() && a.is_empty() {
                b.push_row(old);
                continue;
            }
            row.clear();
            let mut ri = r.iter().map(|e| e.1).peekable();
            let mut ai = a.iter().map(|e| e.1).peekable();
            for &v in old {
                while let Some(x) = ai.next_if(|&x| x < v) {
                    row.push(x);
                }
                ai.next_if(|&x| x == v);
                while ri.next_if(|&x| x < v).is_some() {}
                if ri.next_if(|&x| x == v).is_none() {
                    row.push(v);
                }
            }
            row.extend(ai);
            b.push_row(&row);
        }
        b.finish(features, self.dim, label)
    }

    /// Contracts edge endpoints `o < p` into `o`: `p`'s neighbors move to
    /// `o`, parallel edges collapse and nodes above `p` shift down by one.
    pub(crate) fn contracted(&self, o: NodeId, p: NodeId, features: Vec<f64>) -> Graph {
        debug_assert!(o < p && p < self.node_count());
        let relabel = |x: NodeId| if x > p { x - 1 } else { x };
        let n = self.node_count();
        let mut b = RowBuilder::with_capacity(n - 1, self.adj.len());
        let mut row = Vec::new();
        for u in 0..n {
            if u == p {
                continue;
            }
            let old = self.neighbors(u);
            if u == o {
                b.push_unsorted(
                    old.iter()
                        .chain(self.neighbors(p))
                        .copied()
                        .filter(|&x| x != o && x != p)
                        .map(relabel),
                );
                continue;
            }
            match old.binary_search(&p) {
                Err(_) => {
                    row.clear();
                    row.extend(old.iter().map(|&x| relabel(x)));
                    b.push_row(&row);
                }
                Ok(at) => {
                    row.clear();
                    row.extend(old[..at].iter().copied());
                    row.extend(old[at + 1..].iter().map(|&x| relabel(x)));
                    if let Err(pos) = row.binary_search(&o) {
                        row.insert(pos, o);
                    }
                    b.push_row(&row);
                }
            }
        }
        b.finish(features, self.dim, self.label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(g: &Graph) -> Vec<(NodeId, NodeId)> {
        g.edges().collect()
    }

    #[test]
    fn patch_matches_rebuild() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let p = g.patched(
            6,
            &[(1, 2), (0, 3)],
            &[(5, 2), (0, 2), (0, 1)],
            Vec::new(),
            None,
        );
        assert_eq!(
            edges(&p),
            vec![(0, 1), (0, 2), (0, 4), (2, 3), (2, 5), (3, 4)]
        );
        assert_eq!(p.node_count(), 6);
    }

    #[test]
    fn contraction_collapses_and_shifts() {
        // square 0-1-2-3 with chord 1-3, plus pendant 4 on 2
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (1, 3), (2, 4)]).unwrap();
        let c = g.contracted(1, 3, Vec::new());
        assert_eq!(edges(&c), vec![(0, 1), (1, 2), (2, 3)]);
        let c = g.contracted(0, 1, Vec::new());
        assert_eq!(edges(&c), vec![(0, 1), (0, 2), (1, 2), (1, 3)]);
    }
}
