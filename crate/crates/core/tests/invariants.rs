use std::collections::BTreeSet;

use graphaug::baselines::{add_edge, change_attr, drop_edge, drop_node, graph_crop, motif_swap};
use graphaug::diffusion::{ppr_column, sample_connected, DiffusionConfig};
use graphaug::graph::{count_triangles, induced_is_connected, is_connected, triangles_at};
use graphaug::nodesam::{merge, nodesam, split};
use graphaug::rng;
use graphaug::submix::submix;
use graphaug::{Augmenter, Error, Graph, GraphSet, Method};
use proptest::prelude::*;

const DIM: usize = 3;

fn with_onehot(n: usize, edges: &[(usize, usize)], label: usize) -> Graph {
    let mut x = vec![0.0; n * DIM];
    for v in 0..n {
        x[v * DIM + v % DIM] = 1.0;
    }
    Graph::new(n, edges, x, DIM, Some(label)).unwrap()
}

/// Any simple graph on 1..=20 nodes.
fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..=20).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..60).prop_map(move |pairs| {
            let edges: BTreeSet<_> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            with_onehot(n, &edges.into_iter().collect::<Vec<_>>(), 0)
        })
    })
}

/// A random tree on 2..=20 nodes plus extra chords, so always connected.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=20).prop_flat_map(|n| {
        (
            prop::collection::vec(any::<prop::sample::Index>(), n - 1),
            prop::collection::vec((0..n, 0..n), 0..40),
            0usize..2,
        )
            .prop_map(move |(parents, chords, label)| {
                let mut edges = BTreeSet::new();
                for (i, p) in parents.iter().enumerate() {
                    let v = i + 1;
                    edges.insert((p.index(v), v));
                }
                for (u, v) in chords {
                    if u != v {
                        edges.insert((u.min(v), u.max(v)));
                    }
                }
                with_onehot(n, &edges.into_iter().collect::<Vec<_>>(), label)
            })
    })
}

/// Sorted rows, no loops, every half-edge mirrored.
fn well_formed(g: &Graph) -> bool {
    (0..g.node_count()).all(|u| {
        let row = g.neighbors(u);
        row.windows(2).all(|w| w[0] < w[1])
            && row
                .iter()
                .all(|&v| v != u && v < g.node_count() && g.neighbors(v).binary_search(&u).is_ok())
    }) && g.features().len() == g.node_count() * g.feature_dim()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_method_emits_well_formed_graphs(
        a in connected_graph(),
        b in connected_graph(),
        seed in any::<u64>(),
    ) {
        let set = GraphSet::new(vec![a, b], 2, DIM).unwrap();
        let mut methods = Method::ALL.to_vec();
        methods.extend(["nodesam/split-only", "nodesam/merge-only", "nodesam/base", "submix/base"]
            .map(|m| m.parse::<Method>().unwrap()));
        for m in methods {
            match Augmenter::new(m).apply(&set, 0, &mut rng::master(seed)) {
                Ok(s) => prop_assert!(well_formed(&s.graph), "{}", m),
                Err(e) => prop_assert!(e.is_inapplicable(), "{}: {}", m, e),
            }
        }
    }

    #[test]
    fn csr_rows_are_sorted_and_symmetric(g in any_graph()) {
        let mut deg_sum = 0;
        for v in 0..g.node_count() {
            let row = g.neighbors(v);
            prop_assert!(row.windows(2).all(|w| w[0] < w[1]));
            for &u in row {
                prop_assert!(u != v);
                prop_assert!(g.neighbors(u).binary_search(&v).is_ok());
            }
            deg_sum += row.len();
        }
        prop_assert_eq!(deg_sum, 2 * g.edge_count());
        let edges: Vec<_> = g.edges().collect();
        prop_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(edges.iter().all(|&(u, v)| u < v));
    }

    #[test]
    fn triangle_counts_agree(g in any_graph()) {
        let per_node: usize = (0..g.node_count())
            .map(|v| triangles_at(&g, v).unwrap().count)
            .sum();
        prop_assert_eq!(per_node, 3 * count_triangles(&g));
    }

    #[test]
    fn split_adds_one_node_and_one_edge(g in any_graph(), seed in any::<u64>()) {
        let s = split(&g, &mut rng::master(seed)).unwrap();
        prop_assert_eq!(s.graph.node_count(), g.node_count() + 1);
        prop_assert_eq!(s.graph.edge_count(), g.edge_count() + 1);
        let (vj, vk) = s.children;
        prop_assert!(s.graph.has_edge(vj, vk));
        prop_assert_eq!(s.graph.degree(vj) + s.graph.degree(vk), g.degree(s.target) + 2);
        prop_assert_eq!(s.graph.feature_row(vk), g.feature_row(s.target));
    }

    #[test]
    fn merge_removes_shared_triangles(g in any_graph(), seed in any::<u64>()) {
        match merge(&g, &mut rng::master(seed)) {
            Err(Error::EdgelessGraph) => prop_assert_eq!(g.edge_count(), 0),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
            Ok(m) => {
                prop_assert_eq!(m.graph.node_count(), g.node_count() - 1);
                prop_assert_eq!(m.graph.edge_count() + m.removed_edges, g.edge_count());
                prop_assert!(g.has_edge(m.merged.0, m.merged.1));
            }
        }
    }

    #[test]
    fn nodesam_keeps_nodes_label_and_connectivity(
        g in connected_graph(),
        seed in any::<u64>(),
    ) {
        let out = nodesam(&g, &mut rng::master(seed)).unwrap();
        prop_assert_eq!(out.node_count(), g.node_count());
        prop_assert_eq!(out.label(), g.label());
        prop_assert_eq!(out.feature_dim(), g.feature_dim());
        prop_assert!(is_connected(&out).unwrap());
    }

    #[test]
    fn same_seed_same_output(g in any_graph(), seed in any::<u64>()) {
        let a = nodesam(&g, &mut rng::master(seed));
        let b = nodesam(&g, &mut rng::master(seed));
        prop_assert_eq!(a.ok(), b.ok());
    }

    #[test]
    fn submix_output_is_connected_with_a_valid_soft_label(
        a in connected_graph(),
        b in connected_graph(),
        seed in any::<u64>(),
    ) {
        let (la, lb) = (a.label().unwrap(), b.label().unwrap());
        let n = a.node_count();
        let set = GraphSet::new(vec![a, b], 2, DIM).unwrap();
        let out = submix(&set, 0, 0.4, &DiffusionConfig::default(), &mut rng::master(seed))
            .unwrap();
        prop_assert_eq!(out.graph.node_count(), n);
        prop_assert_eq!(out.graph.label(), Some(la));
        prop_assert!(is_connected(&out.graph).unwrap());
        prop_assert!((0.0..=1.0).contains(&out.kept_ratio));
        prop_assert_eq!(out.kept_edges + out.donor_edges, out.graph.edge_count());
        prop_assert!((out.soft_label.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        if la == lb {
            prop_assert_eq!(out.soft_label[la], 1.0);
        } else {
            prop_assert!((out.soft_label[la] - out.kept_ratio).abs() < 1e-12);
        }
    }

    #[test]
    fn ppr_scores_are_nonnegative_and_root_heavy(g in connected_graph(), root in any::<prop::sample::Index>()) {
        let root = root.index(g.node_count());
        let cfg = DiffusionConfig::default();
        let s = ppr_column(&g, root, &cfg).unwrap();
        prop_assert!(s.scores.iter().all(|&x| x >= 0.0));
        prop_assert!(s.scores[root] >= cfg.alpha);
    }

    #[test]
    fn sampled_sets_are_connected_and_rooted(
        g in connected_graph(),
        root in any::<prop::sample::Index>(),
        k in any::<prop::sample::Index>(),
    ) {
        let root = root.index(g.node_count());
        let k = 1 + k.index(g.node_count());
        let s = sample_connected(&g, root, k, &DiffusionConfig::default()).unwrap();
        prop_assert_eq!(s.nodes.len(), k);
        prop_assert_eq!(s.nodes[0], root);
        prop_assert!(induced_is_connected(&g, &s.nodes));
        let distinct: BTreeSet<_> = s.nodes.iter().collect();
        prop_assert_eq!(distinct.len(), k);
    }

    #[test]
    fn baseline_count_changes(g in connected_graph(), seed in any::<u64>()) {
        let r = &mut rng::master(seed);
        let (n, m) = (g.node_count(), g.edge_count());

        let d = drop_edge(&g, r).unwrap();
        prop_assert_eq!((d.node_count(), d.edge_count()), (n, m - 1));

        match add_edge(&g, r) {
            Ok(a) => prop_assert_eq!((a.node_count(), a.edge_count()), (n, m + 1)),
            Err(Error::CompleteGraph) => prop_assert_eq!(m, n * (n - 1) / 2),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }

        let c = change_attr(&g, r).unwrap();
        prop_assert!(c.same_topology(&g));

        if n >= 2 {
            let dn = drop_node(&g, r).unwrap();
            prop_assert_eq!(dn.node_count(), n - 1);
        }

        let crop = graph_crop(&g, 0.7, &DiffusionConfig::default(), r).unwrap();
        prop_assert!(crop.node_count() <= n);
        prop_assert!(is_connected(&crop).unwrap());

        match motif_swap(&g, r) {
            Ok(s) => {
                prop_assert_eq!((s.node_count(), s.edge_count()), (n, m));
                prop_assert!(is_connected(&s).unwrap());
            }
            Err(Error::NoOpenTriangle) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }
}
