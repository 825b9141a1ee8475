//! Closed-form expectations for the NodeSam stages, checked by simulation.

use rayon::prelude::*;
use serde::Serialize;

use super::summary::MeanEstimate;
use crate::error::{Error, Result};
use crate::graph::{common_neighbors, count_triangles, triangles_at, Graph, NodeId};
use crate::nodesam::{merge, split_at};
use crate::rng;

/// Simulated mean of a quantity against its predicted expectation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub name: String,
    pub predicted: f64,
    pub mean: f64,
    pub se: f64,
    pub variance: f64,
    pub trials: usize,
    pub seed: u64,
    /// `|mean - predicted| <= 3 se`, up to rounding.
    pub pass: bool,
}

impl OracleReport {
    fn new(name: String, predicted: f64, values: &[f64], seed: u64) -> Self {
        let m = MeanEstimate::from_values(values);
        let slack = 1e-9 * predicted.abs().max(1.0);
        Self {
            name,
            predicted,
            mean: m.mean,
            se: m.se,
            variance: m.variance,
            trials: m.n,
            seed,
            pass: (m.mean - predicted).abs() <= 3.0 * m.se + slack,
        }
    }

    /// Every trial produced the same value.
    pub fn is_exact(&self) -> bool {
        self.variance == 0.0
    }
}

fn simulate<F>(trials: usize, seed: u64, stage: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(&mut rng::Rng) -> Result<f64> + Sync,
{
    (0..trials)
        .into_par_iter()
        .map(|t| f(&mut rng::stream(seed, stage, t as u64)))
        .collect()
}

/// Triangles left after splitting `target`: expected `T(G) - t / 2`, where
/// `t` counts the triangles through `target`.
pub fn oracle_split_triangles(
    g: &Graph,
    target: NodeId,
    trials: usize,
    seed: u64,
) -> Result<OracleReport> {
    let t = triangles_at(g, target)?.count as f64;
    let predicted = count_triangles(g) as f64 - t / 2.0;
    let values = simulate(trials, seed, 1, |r| {
        Ok(count_triangles(&split_at(g, target, r)?.graph) as f64)
    })?;
    Ok(OracleReport::new(
        format!("split triangles at node {target}"),
        predicted,
        &values,
        seed,
    ))
}

/// New triangles when neighbor `u` of the split `target` is linked to the
/// child it is not adjacent to: expected `|N(u) & N(target)| / 2 + 1`.
pub fn oracle_adjust_triangles(
    g: &Graph,
    target: NodeId,
    u: NodeId,
    trials: usize,
    seed: u64,
) -> Result<OracleReport> {
    g.check_node(u)?;
    if !g.has_edge(u, target) {
        return Err(Error::InvalidParameter(format!(
            "node {u} is not adjacent to split target {target}"
        )));
    }
    let shared = common_neighbors(g, u, target)?.len() as f64;
    let predicted = shared / 2.0 + 1.0;
    let values = simulate(trials, seed, 2, |r| {
        let s = split_at(g, target, r)?;
        let (vj, vk) = s.children;
        let other = if s.graph.has_edge(u, vj) { vk } else { vj };
        Ok(common_neighbors(&s.graph, u, other)?.len() as f64)
    })?;
    Ok(OracleReport::new(
        format!("adjust triangles for neighbor {u} of node {target}"),
        predicted,
        &values,
        seed,
    ))
}

/// Edges left after merging a uniform edge: expected
/// `|E| - 3 T(G) / |E| - 1`.
pub fn oracle_merge_edges(g: &Graph, trials: usize, seed: u64) -> Result<OracleReport> {
    let m = g.edge_count() as f64;
    if m == 0.0 {
        return Err(Error::EdgelessGraph);
    }
    let predicted = m - 3.0 * count_triangles(g) as f64 / m - 1.0;
    let values = simulate(trials, seed, 3, |r| {
        Ok(merge(g, r)?.graph.edge_count() as f64)
    })?;
    Ok(OracleReport::new(
        "merge edges".into(),
        predicted,
        &values,
        seed,
    ))
}
