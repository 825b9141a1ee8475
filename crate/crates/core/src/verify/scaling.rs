//! Runtime growth on synthetic graphs of increasing size.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::{Property, PropertyReport, Verdict};
use crate::augment::Augmenter;
use crate::dataset::{gen_er, random_onehot};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSet};
use crate::rng;

pub const MAX_SLOPE: f64 = 1.15;
pub const MIN_R2: f64 = 0.95;

/// Random graph families parameterized by edge count.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    /// `G(n, m)` with fixed average degree.
    Sparse { avg_degree: f64 },
    /// `G(n, m)` with `n = 4 sqrt(m)`: density fixed at about 1/8, so
    /// degrees and triangle counts per node grow with `m`.
    Dense,
}

impl GraphFamily {
    pub fn nodes_for(&self, edges: usize) -> usize {
        match *self {
            GraphFamily::Sparse { avg_degree } => {
                ((2.0 * edges as f64 / avg_degree).round() as usize).max(2)
            }
            GraphFamily::Dense => (4.0 * (edges as f64).sqrt()).ceil() as usize,
        }
    }

    pub fn name(&self) -> String {
        match self {
            GraphFamily::Sparse { avg_degree } => format!("sparse-d{avg_degree}"),
            GraphFamily::Dense => "dense".into(),
        }
    }

    /// A graph with `edges` edges, one-hot features of width `dim` and
    /// the given label.
    pub fn generate(
        &self,
        edges: usize,
        dim: usize,
        label: usize,
        r: &mut rng::Rng,
    ) -> Result<Graph> {
        let g = gen_er(self.nodes_for(edges), edges, r)?;
        Ok(random_onehot(&g, dim, r)?.with_label(Some(label)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingConfig {
    pub families: Vec<(GraphFamily, Vec<usize>)>,
    /// Timed runs per size; the median is kept.
    pub repeats: usize,
    pub feature_dim: usize,
    /// Flush the last-level cache before each timed run, so every size is
    /// timed from main memory instead of some from cache and some not.
    /// Also pins the allocator so large buffers are reused rather than
    /// mapped afresh, which otherwise flips between page-faulting and
    /// non-faulting regimes from one size to the next.
    pub cold_cache: bool,
}

/// `count` sizes spaced evenly in log scale from `lo` to `hi`.
pub fn log_sizes(lo: usize, hi: usize, count: usize) -> Vec<usize> {
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as usize)
        .collect()
}

impl ScalingConfig {
    /// Sparse family over `10^4` to `10^6` edges and dense family over
    /// `3 * 10^3` to `3 * 10^5`, where superlinear methods still finish.
    pub fn standard() -> Self {
        Self {
            families: vec![
                (
                    GraphFamily::Sparse { avg_degree: 6.0 },
                    log_sizes(10_000, 1_000_000, 5),
                ),
                (GraphFamily::Dense, log_sizes(3_000, 300_000, 5)),
            ],
            repeats: 11,
            feature_dim: 7,
            cold_cache: true,
        }
    }

    /// One family over custom sizes.
    pub fn single(family: GraphFamily, sizes: Vec<usize>, repeats: usize) -> Self {
        Self {
            families: vec![(family, sizes)],
            repeats,
            feature_dim: 7,
            cold_cache: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TimingPoint {
    pub family: String,
    pub edges: usize,
    pub nodes: usize,
    pub median_seconds: f64,
    pub repeats: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

impl ScalingFit {
    pub fn is_linear(&self) -> bool {
        self.slope <= MAX_SLOPE && self.r2 >= MIN_R2
    }
}

/// Least squares fit of `ln(seconds)` on `ln(edges)`.
pub fn fit_loglog(points: &[TimingPoint]) -> ScalingFit {
    let xy: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.edges as f64).ln(), p.median_seconds.max(1e-12).ln()))
        .collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xy
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r2 = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    ScalingFit {
        slope,
        intercept,
        r2,
    }
}

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

/// Median wall time of one augmentation per size. Runs serially so that
/// timings are not disturbed by other trials.
pub fn time_method(
    aug: &Augmenter,
    family: GraphFamily,
    sizes: &[usize],
    repeats: usize,
    feature_dim: usize,
    cold_cache: bool,
    seed: u64,
) -> Result<Vec<TimingPoint>> {
    if repeats == 0 {
        return Err(Error::InvalidParameter("repeats must be positive".into()));
    }
    let mut flush = if cold_cache {
        steady_allocator();
        vec![0u8; FLUSH_BYTES]
    } else {
        Vec::new()
    };
    let mut sets = Vec::with_capacity(sizes.len());
    for (si, &m) in sizes.iter().enumerate() {
        let mut gen = rng::stream(seed, 1000 + si as u64, 0);
        let mut graphs = vec![family.generate(m, feature_dim, 0, &mut gen)?];
        if aug.method.needs_partner() {
            graphs.push(family.generate(m, feature_dim, 1, &mut gen)?);
        }
        sets.push(GraphSet::new(graphs, 2, feature_dim)?);
    }
    // Sizes take turns within each round so slow drift of the host hits
    // all of them alike. Round 0 is an untimed warm-up.
    let mut times = vec![Vec::with_capacity(repeats); sizes.len()];
    for rep in 0..=repeats {
        for (si, set) in sets.iter().enumerate() {
            let mut r = rng::stream(seed, 2000 + si as u64, rep as u64);
            flush_cache(&mut flush);
            let start = Instant::now();
            let sample = aug.apply(set, 0, &mut r)?;
            let elapsed = start.elapsed().as_secs_f64();
            drop(sample);
            if rep > 0 {
                times[si].push(elapsed);
            }
        }
    }
    let out = sizes
        .iter()
        .zip(sets)
        .zip(times)
        .map(|((&m, set), t)| TimingPoint {
            family: family.name(),
            edges: m,
            nodes: set.graphs()[0].node_count(),
            median_seconds: median(t),
            repeats,
        })
        .collect();
    Ok(out)
}

/// Serve allocations up to 32 MiB from the heap and never trim it.
/// Process-wide and idempotent.
#[cfg(all(target_os = "linux", target_env = "gnu"))]
fn steady_allocator() {
    static ONCE: std::sync::Once = std::sync::Once::new();
    ONCE.call_once(|| unsafe {
        // SAFETY: mallopt only adjusts allocator tunables.
        libc::mallopt(libc::M_MMAP_THRESHOLD, 32 << 20);
        libc::mallopt(libc::M_TRIM_THRESHOLD, i32::MAX);
    });
}

#[cfg(not(all(target_os = "linux", target_env = "gnu")))]
fn steady_allocator() {}

const FLUSH_BYTES: usize = 640 << 20;

/// Touches one byte per cache line of a buffer far larger than any cache.
fn flush_cache(buf: &mut [u8]) {
    for i in (0..buf.len()).step_by(64) {
        buf[i] = i as u8;
    }
    std::hint::black_box(buf);
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    let lo = sizes.iter().copied().min().unwrap_or(0);
    let hi = sizes.iter().copied().max().unwrap_or(0);
    if sizes.len() < 5 || lo == 0 || hi < 100 * lo {
        return Err(Error::InvalidParameter(
            "need at least 5 sizes spanning two orders of magnitude".into(),
        ));
    }
    Ok(())
}

/// Timing table plus one fit per family.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingResult {
    pub points: Vec<TimingPoint>,
    pub fits: Vec<(String, ScalingFit)>,
}

impl ScalingResult {
    pub fn points_csv(&self) -> String {
        let mut out = String::from("family,edges,nodes,median_seconds,repeats\n");
        for p in &self.points {
            writeln!(
                out,
                "{},{},{},{:.9},{}",
                p.family, p.edges, p.nodes, p.median_seconds, p.repeats
            )
            .unwrap();
        }
        out
    }
}

pub fn measure_scaling(aug: &Augmenter, cfg: &ScalingConfig, seed: u64) -> Result<ScalingResult> {
    let mut points = Vec::new();
    let mut fits = Vec::new();
    for (family, sizes) in &cfg.families {
        check_sizes(sizes)?;
        let p = time_method(
            aug,
            *family,
            sizes,
            cfg.repeats,
            cfg.feature_dim,
            cfg.cold_cache,
            seed,
        )?;
        fits.push((family.name(), fit_loglog(&p)));
        points.extend(p);
    }
    Ok(ScalingResult { points, fits })
}

/// Linear runtime: slope at most 1.15 with R^2 at least 0.95 on every
/// family.
pub fn check_p5(aug: &Augmenter, cfg: &ScalingConfig, seed: u64) -> Result<PropertyReport> {
    let res = measure_scaling(aug, cfg, seed)?;
    Ok(p5_report(aug, &res, seed))
}

pub fn p5_report(aug: &Augmenter, res: &ScalingResult, seed: u64) -> PropertyReport {
    let pass = res.fits.iter().all(|(_, f)| f.is_linear());
    let worst = res
        .fits
        .iter()
        .map(|(_, f)| f.slope)
        .fold(f64::NEG_INFINITY, f64::max);
    let best = res
        .fits
        .iter()
        .map(|(_, f)| f.slope)
        .fold(f64::INFINITY, f64::min);
    let mut extra = BTreeMap::new();
    for (name, f) in &res.fits {
        extra.insert(format!("{name}_slope"), f.slope);
        extra.insert(format!("{name}_r2"), f.r2);
    }
    PropertyReport {
        method: aug.method,
        property: Property::P5,
        verdict: Verdict::from(pass),
        estimate: worst,
        ci_low: best,
        ci_high: worst,
        trials: res.points.len(),
        skipped: 0,
        seed,
        extra,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(data: &[(usize, f64)]) -> Vec<TimingPoint> {
        data.iter()
            .map(|&(edges, t)| TimingPoint {
                family: "t".into(),
                edges,
                nodes: 0,
                median_seconds: t,
                repeats: 1,
            })
            .collect()
    }

    #[test]
    fn fit_recovers_power_laws() {
        let lin = fit_loglog(&pts(&[(10, 1.0), (100, 10.0), (1000, 100.0)]));
        assert!((lin.slope - 1.0).abs() < 1e-12 && (lin.r2 - 1.0).abs() < 1e-12);
        assert!(lin.is_linear());
        let quad = fit_loglog(&pts(&[(10, 1.0), (100, 100.0), (1000, 1e4)]));
        assert!((quad.slope - 2.0).abs() < 1e-12);
        assert!(!quad.is_linear());
    }

    #[test]
    fn families_hit_the_requested_size() {
        let mut r = rng::master(0);
        let g = GraphFamily::Dense.generate(400, 3, 1, &mut r).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (80, 400));
        let g = GraphFamily::Sparse { avg_degree: 6.0 }
            .generate(300, 3, 0, &mut r)
            .unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (100, 300));
        assert_eq!(log_sizes(10, 1000, 3), vec![10, 100, 1000]);
        assert!(check_sizes(&[1, 2, 3, 4, 50]).is_err());
    }
}
