use std::fmt::Write as _;

use serde::Serialize;

/// Two-sided 99% normal quantile.
pub const Z99: f64 = 2.576;

/// Mean with its standard error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub n: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    pub se: f64,
}

impl MeanEstimate {
    /// Two-pass mean and variance, summed in slice order.
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len();
        if n == 0 {
            return Self::default();
        }
        let mean = values.iter().sum::<f64>() / n as f64;
        let variance = if n > 1 {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Self {
            n,
            mean,
            variance,
            se: (variance / n as f64).sqrt(),
        }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        let v: Vec<f64> = values.iter().map(|&x| x as f64).collect();
        Self::from_values(&v)
    }

    /// `mean -/+ z * se`.
    pub fn ci(&self, z: f64) -> (f64, f64) {
        (self.mean - z * self.se, self.mean + z * self.se)
    }

    pub fn ci_contains(&self, z: f64, x: f64) -> bool {
        let (lo, hi) = self.ci(z);
        lo <= x && x <= hi
    }
}

/// Min, quartiles, max and mean.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FiveNumber {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

/// Linear interpolation between closest ranks.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

impl FiveNumber {
    pub fn from_values(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let mut s = values.to_vec();
        s.sort_by(f64::total_cmp);
        Self {
            min: s[0],
            q1: quantile(&s, 0.25),
            median: quantile(&s, 0.5),
            q3: quantile(&s, 0.75),
            max: s[s.len() - 1],
            mean: MeanEstimate::from_values(values).mean,
        }
    }
}

/// Edge-count changes of repeated augmentations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaDistribution {
    pub method: String,
    pub dataset: String,
    pub deltas: Vec<i64>,
    pub summary: FiveNumber,
}

impl DeltaDistribution {
    pub fn new(method: impl Into<String>, dataset: impl Into<String>, deltas: Vec<i64>) -> Self {
        let v: Vec<f64> = deltas.iter().map(|&d| d as f64).collect();
        Self {
            method: method.into(),
            dataset: dataset.into(),
            summary: FiveNumber::from_values(&v),
            deltas,
        }
    }

    pub fn mean(&self) -> MeanEstimate {
        MeanEstimate::from_ints(&self.deltas)
    }

    /// `trial,edge_delta` rows.
    pub fn deltas_csv(&self) -> String {
        let mut out = String::from("trial,edge_delta\n");
        for (t, d) in self.deltas.iter().enumerate() {
            writeln!(out, "{t},{d}").unwrap();
        }
        out
    }

    pub fn summary_csv_header() -> &'static str {
        "method,dataset,trials,min,q1,median,q3,max,mean\n"
    }

    pub fn summary_csv_row(&self) -> String {
        let s = &self.summary;
        format!(
            "{},{},{},{},{},{},{},{},{}\n",
            self.method,
            self.dataset,
            self.deltas.len(),
            s.min,
            s.q1,
            s.median,
            s.q3,
            s.max,
            s.mean
        )
    }
}
