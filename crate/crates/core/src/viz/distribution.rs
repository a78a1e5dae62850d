//! Pooled value distributions of original and generated data.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Source;
use crate::error::{Error, Result};
use crate::measures::histogram::Bins;
use crate::tensor::TimeSeriesTensor;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionMode {
    /// Relative frequencies on shared equal-width bins.
    Histogram,
    /// Gaussian KDE with Silverman's bandwidth, evaluated on a shared grid.
    Kde,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub label: Source,
    /// `(position, density)`; positions are bin centers or grid points.
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionData {
    pub mode: DistributionMode,
    pub curves: Vec<Curve>,
}

impl DistributionData {
    pub fn curve(&self, label: Source) -> Option<&Curve> {
        self.curves.iter().find(|c| c.label == label)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("position,density,label\n");
        for c in &self.curves {
            for (x, d) in &c.points {
                let _ = writeln!(s, "{x:?},{d:?},{}", c.label.as_str());
            }
        }
        s
    }
}

fn silverman_bandwidth(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0)).sqrt();
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let q = |p: f64| {
        let pos = p * (sorted.len() - 1) as f64;
        let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
        sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
    };
    let iqr = q(0.75) - q(0.25);
    let spread = if iqr > 0.0 { sd.min(iqr / 1.34) } else { sd };
    let h = 0.9 * spread * n.powf(-0.2);
    if h > 0.0 {
        h
    } else {
        1e-3
    }
}

fn kde(values: &[f64], grid: &[f64]) -> Vec<f64> {
    let h = silverman_bandwidth(values);
    let norm = 1.0 / (values.len() as f64 * h * (2.0 * std::f64::consts::PI).sqrt());
    grid.iter()
        .map(|&x| {
            values
                .iter()
                .map(|v| {
                    let u = (x - v) / h;
                    (-0.5 * u * u).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect()
}

/// Pools every value of each tensor and emits aligned curves over the union range.
pub fn distribution_data(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    bins: usize,
    mode: DistributionMode,
) -> Result<DistributionData> {
    if bins < 2 {
        return Err(Error::Parameter(
            "distribution plot needs at least 2 bins".into(),
        ));
    }
    let pools = [
        (Source::Real, orig.as_slice()),
        (Source::Synthetic, gen.as_slice()),
    ];
    let mut range = Bins::spanning(orig.as_slice().iter().chain(gen.as_slice()).copied(), bins);
    if range.is_degenerate() {
        range.lo -= 0.5;
        range.hi += 0.5;
    }
    let curves = match mode {
        DistributionMode::Histogram => {
            let centers = range.centers();
            pools
                .iter()
                .map(|&(label, values)| Curve {
                    label,
                    points: centers
                        .iter()
                        .copied()
                        .zip(range.frequencies(values.iter().copied()))
                        .collect(),
                })
                .collect()
        }
        DistributionMode::Kde => {
            let step = (range.hi - range.lo) / (bins - 1) as f64;
            let grid: Vec<f64> = (0..bins).map(|k| range.lo + k as f64 * step).collect();
            pools
                .iter()
                .map(|&(label, values)| Curve {
                    label,
                    points: grid.iter().copied().zip(kde(values, &grid)).collect(),
                })
                .collect()
        }
    };
    Ok(DistributionData { mode, curves })
}
