//! Goodness-of-fit checks of the random choices against their reference
//! distributions. Seeds are fixed, so each p-value is a constant; the
//! threshold only guards against a wrong distribution.

use graphaug::baselines::drop_edge;
use graphaug::nodesam::{adjust, merge, split_at};
use graphaug::rng;
use graphaug::submix::pick_partner;
use graphaug::Graph;
use statrs::distribution::{Binomial, ChiSquared, ContinuousCDF, Discrete};

const TRIALS: usize = 40_000;
const MIN_P: f64 = 1e-3;

fn chi_squared_p(observed: &[usize], expected: &[f64]) -> f64 {
    let stat: f64 = observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    ChiSquared::new((observed.len() - 1) as f64)
        .unwrap()
        .sf(stat)
}

fn uniform_p(observed: &[usize]) -> f64 {
    let e = observed.iter().sum::<usize>() as f64 / observed.len() as f64;
    chi_squared_p(observed, &vec![e; observed.len()])
}

fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn split_hands_edges_over_by_fair_coin() {
    let d = 8;
    let star = Graph::from_edges(d + 1, &(1..=d).map(|v| (0, v)).collect::<Vec<_>>()).unwrap();
    let mut counts = vec![0usize; d + 1];
    for t in 0..TRIALS {
        let s = split_at(&star, 0, &mut rng::stream(11, t as u64, 0)).unwrap();
        // the new child also carries the edge to its twin
        counts[s.graph.degree(s.children.1) - 1] += 1;
    }
    let bin = Binomial::new(0.5, d as u64).unwrap();
    let expected: Vec<f64> = (0..=d as u64).map(|k| bin.pmf(k) * TRIALS as f64).collect();
    let p = chi_squared_p(&counts, &expected);
    assert!(p > MIN_P, "p = {p}, counts {counts:?}");
}

#[test]
fn adjust_on_k3_includes_each_partner_with_three_quarters() {
    let k3 = complete(3);
    let mut counts = vec![0usize; 3];
    for t in 0..TRIALS {
        let r = &mut rng::stream(12, t as u64, 0);
        let s = split_at(&k3, 0, r).unwrap();
        let a = adjust(&k3, &s, r).unwrap();
        counts[a.params.chosen.len()] += 1;
    }
    let bin = Binomial::new(0.75, 2).unwrap();
    let expected: Vec<f64> = (0..=2).map(|k| bin.pmf(k) * TRIALS as f64).collect();
    let p = chi_squared_p(&counts, &expected);
    assert!(p > MIN_P, "p = {p}, counts {counts:?}");
}

#[test]
fn merge_picks_edges_uniformly() {
    // a triangle with a tail: edges differ in degree and triangle membership
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
    let edges: Vec<_> = g.edges().collect();
    let mut counts = vec![0usize; edges.len()];
    for t in 0..TRIALS {
        let m = merge(&g, &mut rng::stream(13, t as u64, 0)).unwrap();
        counts[edges.iter().position(|&e| e == m.merged).unwrap()] += 1;
    }
    let p = uniform_p(&counts);
    assert!(p > MIN_P, "p = {p}, counts {counts:?}");
}

#[test]
fn drop_edge_removes_edges_uniformly() {
    let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
    let edges: Vec<_> = g.edges().collect();
    let mut counts = vec![0usize; edges.len()];
    for t in 0..TRIALS {
        let out = drop_edge(&g, &mut rng::stream(14, t as u64, 0)).unwrap();
        let gone = edges
            .iter()
            .position(|&(u, v)| !out.has_edge(u, v))
            .unwrap();
        counts[gone] += 1;
    }
    let p = uniform_p(&counts);
    assert!(p > MIN_P, "p = {p}, counts {counts:?}");
}

#[test]
fn partners_are_uniform_over_the_other_graphs() {
    let (len, me) = (10, 3);
    let mut counts = vec![0usize; len];
    for t in 0..TRIALS {
        counts[pick_partner(len, me, &mut rng::stream(15, t as u64, 0)).unwrap()] += 1;
    }
    assert_eq!(counts[me], 0);
    counts.remove(me);
    let p = uniform_p(&counts);
    assert!(p > MIN_P, "p = {p}, counts {counts:?}");
}
