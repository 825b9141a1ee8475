//! Monte Carlo certification of the five augmentation properties:
//!
//! - P1: expected node and edge counts are unchanged.
//! - P2: the output is connected exactly when the input is.
//! - P3: nodes (count or features) change.
//! - P4: the edge count changes.
//! - P5: runtime grows linearly with the number of edges.
//!
//! Every trial draws its own random stream from `(seed, trial)` and results
//! are aggregated in trial order, so reports are reproducible bit for bit
//! regardless of thread count.

mod corpus;
mod oracles;
mod scaling;
mod summary;

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use corpus::{certification_ratio, property_corpus, CorpusConfig};
pub use oracles::{
    oracle_adjust_triangles, oracle_merge_edges, oracle_split_triangles, OracleReport,
};
pub use scaling::{
    check_p5, fit_loglog, log_sizes, measure_scaling, p5_report, time_method, GraphFamily,
    ScalingConfig, ScalingFit, ScalingResult, TimingPoint, MAX_SLOPE, MIN_R2,
};
pub use summary::{DeltaDistribution, FiveNumber, MeanEstimate, Z99};

use crate::augment::{Augmenter, Method};
use crate::error::Result;
use crate::graph::{is_connected, Graph, GraphSet};
use crate::rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Property {
    P1,
    P2,
    P3,
    P4,
    P5,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::P1,
        Property::P2,
        Property::P3,
        Property::P4,
        Property::P5,
    ];
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for Property {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(Property::P1),
            "p2" => Ok(Property::P2),
            "p3" => Ok(Property::P3),
            "p4" => Ok(Property::P4),
            "p5" => Ok(Property::P5),
            other => Err(crate::Error::InvalidParameter(format!(
                "unknown property `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "N/A",
        })
    }
}

impl From<bool> for Verdict {
    fn from(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyReport {
    pub method: Method,
    pub property: Property,
    pub verdict: Verdict,
    /// Mean edge delta (P1), preserved fraction (P2), mean squared node
    /// delta (P3), mean squared edge delta (P4) or worst runtime slope (P5).
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Trials that produced an output.
    pub trials: usize,
    /// Trials whose graph the method could not act on.
    pub skipped: usize,
    pub seed: u64,
    pub extra: BTreeMap<String, f64>,
}

impl PropertyReport {
    pub fn csv_header() -> &'static str {
        "method,property,verdict,estimate,ci_low,ci_high,trials,skipped,seed\n"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.method,
            self.property,
            self.verdict,
            self.estimate,
            self.ci_low,
            self.ci_high,
            self.trials,
            self.skipped,
            self.seed
        )
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<20} {} {:<4} estimate {:+.6} ci [{:+.6}, {:+.6}] trials {}",
            self.method.to_string(),
            self.property,
            self.verdict,
            self.estimate,
            self.ci_low,
            self.ci_high,
            self.trials
        )?;
        if self.skipped > 0 {
            write!(f, " skipped {}", self.skipped)?;
        }
        Ok(())
    }
}

/// Measurements from one augmentation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Trial {
    pub graph: usize,
    pub partner: Option<usize>,
    pub node_delta: i64,
    pub edge_delta: i64,
    pub connected_in: bool,
    pub connected_out: bool,
    /// Squared Frobenius norm of the feature change, when node counts match.
    pub feature_change: Option<f64>,
}

/// All trials of one method on one graph set.
#[derive(Clone, Debug)]
pub struct TrialRun {
    pub method: Method,
    pub seed: u64,
    pub trials: Vec<Trial>,
    pub skipped: usize,
}

fn connected(g: &Graph) -> bool {
    is_connected(g).unwrap_or(false)
}

fn feature_change(a: &Graph, b: &Graph) -> Option<f64> {
    (a.node_count() == b.node_count() && a.feature_dim() == b.feature_dim()).then(|| {
        a.features()
            .iter()
            .zip(b.features())
            .map(|(x, y)| (x - y).powi(2))
            .sum()
    })
}

/// Runs `trials` augmentations, each on a uniformly drawn graph of `set`.
/// Trials on graphs the method cannot act on are counted as skipped.
pub fn run_trials(aug: &Augmenter, set: &GraphSet, trials: usize, seed: u64) -> Result<TrialRun> {
    let conn: Vec<bool> = set.graphs().iter().map(connected).collect();
    let outcomes: Vec<Option<Trial>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::stream(seed, 0, t as u64);
            let i = r.random_range(0..set.len());
            let g = &set.graphs()[i];
            let sample = match aug.apply(set, i, &mut r) {
                Ok(s) => s,
                Err(e) if e.is_inapplicable() => return Ok(None),
                Err(e) => return Err(e),
            };
            let out = &sample.graph;
            Ok(Some(Trial {
                graph: i,
                partner: sample.partner,
                node_delta: out.node_count() as i64 - g.node_count() as i64,
                edge_delta: out.edge_count() as i64 - g.edge_count() as i64,
                connected_in: conn[i],
                connected_out: connected(out),
                feature_change: feature_change(g, out),
            }))
        })
        .collect::<Result<_>>()?;
    let skipped = outcomes.iter().filter(|o| o.is_none()).count();
    Ok(TrialRun {
        method: aug.method,
        seed,
        trials: outcomes.into_iter().flatten().collect(),
        skipped,
    })
}

impl TrialRun {
    fn report(
        &self,
        property: Property,
        verdict: Verdict,
        estimate: f64,
        ci: (f64, f64),
    ) -> PropertyReport {
        let verdict = if self.trials.is_empty() {
            Verdict::NotApplicable
        } else {
            verdict
        };
        PropertyReport {
            method: self.method,
            property,
            verdict,
            estimate,
            ci_low: ci.0,
            ci_high: ci.1,
            trials: self.trials.len(),
            skipped: self.skipped,
            seed: self.seed,
            extra: BTreeMap::new(),
        }
    }

    pub fn node_deltas(&self) -> Vec<i64> {
        self.trials.iter().map(|t| t.node_delta).collect()
    }

    pub fn edge_deltas(&self) -> Vec<i64> {
        self.trials.iter().map(|t| t.edge_delta).collect()
    }

    /// Unbiased size change: the node delta is identically zero or its 99%
    /// interval covers zero, and the edge delta's 99% interval covers zero.
    pub fn p1(&self) -> PropertyReport {
        let nodes = self.node_deltas();
        let node = MeanEstimate::from_ints(&nodes);
        let edge = MeanEstimate::from_ints(&self.edge_deltas());
        let node_ok = nodes.iter().all(|&d| d == 0) || node.ci_contains(Z99, 0.0);
        let edge_ok = edge.ci_contains(Z99, 0.0);
        let mut r = self.report(
            Property::P1,
            (node_ok && edge_ok).into(),
            edge.mean,
            edge.ci(Z99),
        );
        let (lo, hi) = node.ci(Z99);
        r.extra.insert("node_delta_mean".into(), node.mean);
        r.extra.insert("node_ci_low".into(), lo);
        r.extra.insert("node_ci_high".into(), hi);
        r.extra.insert("edge_se".into(), edge.se);
        r
    }

    /// Connectivity preserved in every trial, in both directions.
    pub fn p2(&self) -> PropertyReport {
        let kept = self
            .trials
            .iter()
            .filter(|t| t.connected_in == t.connected_out)
            .count();
        let frac = if self.trials.is_empty() {
            0.0
        } else {
            kept as f64 / self.trials.len() as f64
        };
        let mut r = self.report(
            Property::P2,
            (kept == self.trials.len()).into(),
            frac,
            (frac, frac),
        );
        let conn_in = self.trials.iter().filter(|t| t.connected_in).count();
        let broke = self
            .trials
            .iter()
            .filter(|t| t.connected_in && !t.connected_out)
            .count();
        let joined = self
            .trials
            .iter()
            .filter(|t| !t.connected_in && t.connected_out)
            .count();
        r.extra.insert("connected_inputs".into(), conn_in as f64);
        r.extra.insert(
            "disconnected_inputs".into(),
            (self.trials.len() - conn_in) as f64,
        );
        r.extra.insert("disconnected_outputs".into(), broke as f64);
        r.extra.insert("connected_outputs".into(), joined as f64);
        r
    }

    /// Nodes change: positive mean squared node delta, or positive mean
    /// squared feature change over trials whose node count is unchanged.
    pub fn p3(&self) -> PropertyReport {
        let sq: Vec<f64> = self
            .trials
            .iter()
            .map(|t| (t.node_delta as f64).powi(2))
            .collect();
        let m = MeanEstimate::from_values(&sq);
        let feats: Vec<f64> = self
            .trials
            .iter()
            .filter_map(|t| t.feature_change)
            .collect();
        let f = MeanEstimate::from_values(&feats);
        let pass = m.mean > 0.0 || f.mean > 0.0;
        let mut r = self.report(Property::P3, pass.into(), m.mean, m.ci(Z99));
        r.extra.insert("feature_change_mean".into(), f.mean);
        r.extra.insert("feature_trials".into(), f.n as f64);
        r
    }

    /// Edges change: positive mean squared edge delta.
    pub fn p4(&self) -> PropertyReport {
        let sq: Vec<f64> = self
            .trials
            .iter()
            .map(|t| (t.edge_delta as f64).powi(2))
            .collect();
        let m = MeanEstimate::from_values(&sq);
        self.report(Property::P4, (m.mean > 0.0).into(), m.mean, m.ci(Z99))
    }

    pub fn distribution(&self, dataset: &str) -> DeltaDistribution {
        DeltaDistribution::new(self.method.to_string(), dataset, self.edge_deltas())
    }
}

fn add_ratio(r: &mut PropertyReport, set: &GraphSet) -> Result<()> {
    if matches!(r.method, Method::NodeSam(_)) {
        if let Some(ratio) = certification_ratio(set)? {
            r.extra.insert("edge_to_h_ratio".into(), ratio);
        }
    }
    Ok(())
}

pub fn check_p1(
    aug: &Augmenter,
    set: &GraphSet,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    let mut r = run_trials(aug, set, trials, seed)?.p1();
    add_ratio(&mut r, set)?;
    Ok(r)
}

pub fn check_p2(
    aug: &Augmenter,
    set: &GraphSet,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    Ok(run_trials(aug, set, trials, seed)?.p2())
}

pub fn check_p3(
    aug: &Augmenter,
    set: &GraphSet,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    Ok(run_trials(aug, set, trials, seed)?.p3())
}

pub fn check_p4(
    aug: &Augmenter,
    set: &GraphSet,
    trials: usize,
    seed: u64,
) -> Result<PropertyReport> {
    Ok(run_trials(aug, set, trials, seed)?.p4())
}

pub fn delta_distribution(
    aug: &Augmenter,
    set: &GraphSet,
    dataset: &str,
    trials: usize,
    seed: u64,
) -> Result<DeltaDistribution> {
    Ok(run_trials(aug, set, trials, seed)?.distribution(dataset))
}

/// Reports for the requested properties of one method. P1 to P4 share one
/// set of trials.
pub fn check_properties(
    aug: &Augmenter,
    set: &GraphSet,
    properties: &[Property],
    trials: usize,
    scaling: &ScalingConfig,
    seed: u64,
) -> Result<Vec<PropertyReport>> {
    let needs_trials = properties.iter().any(|&p| p != Property::P5);
    let run = if needs_trials {
        Some(run_trials(aug, set, trials, seed)?)
    } else {
        None
    };
    let mut out = Vec::with_capacity(properties.len());
    for &p in properties {
        let report = match (p, &run) {
            (Property::P5, _) => check_p5(aug, scaling, seed)?,
            (Property::P1, Some(r)) => {
                let mut rep = r.p1();
                add_ratio(&mut rep, set)?;
                rep
            }
            (Property::P2, Some(r)) => r.p2(),
            (Property::P3, Some(r)) => r.p3(),
            (Property::P4, Some(r)) => r.p4(),
            _ => unreachable!("trials run whenever a trial property is requested"),
        };
        out.push(report);
    }
    Ok(out)
}

/// P1 to P5 for every method.
pub fn property_matrix(
    methods: &[Augmenter],
    set: &GraphSet,
    trials: usize,
    scaling: &ScalingConfig,
    seed: u64,
) -> Result<Vec<Vec<PropertyReport>>> {
    methods
        .iter()
        .map(|aug| check_properties(aug, set, &Property::ALL, trials, scaling, seed))
        .collect()
}

/// The verdict each registered method is expected to earn. Baselines with
/// fixed count changes follow directly from those changes.
pub fn expected_verdict(method: Method, property: Property) -> Option<Verdict> {
    use Property::*;
    let pass: &[Property] = match method {
        Method::NodeSam(crate::nodesam::NodeSamVariant::Full)
        | Method::SubMix(crate::augment::SubMixVariant::Full) => &[P1, P2, P3, P4, P5],
        Method::DropEdge => &[P4, P5],
        Method::GraphCrop | Method::NodeAug => &[P3, P4, P5],
        Method::MotifSwap => &[P1, P2],
        Method::DropNode => &[P3, P4, P5],
        Method::AddEdge => &[P4, P5],
        Method::ChangeAttr => &[P1, P2, P3, P5],
        _ => return None,
    };
    Some(pass.contains(&property).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn tiny_set() -> GraphSet {
        let path = Graph::new(
            3,
            &[(0, 1), (1, 2)],
            vec![1.0, 0.0, 0.0, 1.0, 1.0, 0.0],
            2,
            Some(0),
        )
        .unwrap();
        let tri = Graph::new(
            3,
            &[(0, 1), (1, 2), (0, 2)],
            vec![0.0, 1.0, 0.0, 1.0, 1.0, 0.0],
            2,
            Some(1),
        )
        .unwrap();
        GraphSet::new(vec![path, tri], 2, 2).unwrap()
    }

    #[test]
    fn deterministic_baselines_have_exact_deltas() {
        let set = tiny_set();
        let drop = run_trials(&Augmenter::new(Method::DropEdge), &set, 200, 1).unwrap();
        assert!(drop.edge_deltas().iter().all(|&d| d == -1));
        let p1 = drop.p1();
        assert_eq!(p1.verdict, Verdict::Fail);
        assert_eq!((p1.estimate, p1.ci_low, p1.ci_high), (-1.0, -1.0, -1.0));
        assert_eq!(drop.p3().verdict, Verdict::Fail);
        assert_eq!(drop.p4().verdict, Verdict::Pass);

        // the triangle is complete, so half the draws are skipped
        let add = run_trials(&Augmenter::new(Method::AddEdge), &set, 200, 1).unwrap();
        assert!(add.skipped > 0);
        assert_eq!(add.trials.len() + add.skipped, 200);
        assert!(add.trials.iter().all(|t| t.graph == 0 && t.edge_delta == 1));
    }

    #[test]
    fn runs_are_reproducible() {
        let set = tiny_set();
        let aug = Augmenter::new(Method::NodeSam(Default::default()));
        let a = run_trials(&aug, &set, 300, 9).unwrap();
        let b = run_trials(&aug, &set, 300, 9).unwrap();
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.p1(), b.p1());
    }

    #[test]
    fn identity_preserves_everything() {
        let set = tiny_set();
        let run = run_trials(&Augmenter::new(Method::Identity), &set, 100, 2).unwrap();
        assert_eq!(run.p1().verdict, Verdict::Pass);
        assert_eq!(run.p2().verdict, Verdict::Pass);
        assert_eq!(run.p3().verdict, Verdict::Fail);
        assert_eq!(run.p4().verdict, Verdict::Fail);
    }

    #[test]
    fn expected_matrix_rows() {
        let row = |m| {
            Property::ALL
                .iter()
                .map(|&p| expected_verdict(m, p) == Some(Verdict::Pass))
                .collect::<Vec<_>>()
        };
        assert_eq!(row(Method::DropEdge), vec![false, false, false, true, true]);
        assert_eq!(
            row(Method::MotifSwap),
            vec![true, true, false, false, false]
        );
        assert_eq!(expected_verdict(Method::Identity, Property::P1), None);
    }
}
