//! Feature-based (MDD, ACD, SD, KD) and distance-based (ED, DTW) fidelity
//! measures, the repeat-averaging suite runner, and wall-clock timing.
//!
//! All measures compare an original tensor against a generated one; lower is
//! better and bit-identical inputs score exactly 0 under index pairing.

pub mod acf;
pub mod distance;
pub mod dtw;
pub mod histogram;
pub mod moments;
pub mod suite;
pub mod timing;

use serde::{Deserialize, Serialize};

pub use acf::acd;
pub use distance::{ed, nearest_neighbors};
pub use dtw::{dtw, dtw_set};
pub use histogram::mdd;
pub use moments::{kd, sd};
pub use suite::{run_suite, MeasureReport, MeasureStat};
pub use timing::{timed, Timing};

/// How generated windows are matched to original windows for ED and DTW.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pairing {
    /// Window `r` against window `r`; requires equal window counts.
    Index,
    /// Each generated window against its Euclidean-nearest original window.
    NearestNeighbor,
}

/// Units of the per-bin histogram gap in MDD.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HistogramScale {
    /// Relative frequency per bin (sums to 1).
    Frequency,
    /// Relative frequency divided by bin width.
    Density,
}

/// How a window-level Euclidean distance is formed from the `l × N` differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdAggregation {
    /// `sqrt` of the sum over all `l · N` squared differences.
    Window,
    /// Mean over dimensions of the per-dimension `sqrt(Σ_j Δ²)`.
    PerDimensionMean,
}

/// Step cost used inside DTW.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DtwCost {
    /// Euclidean distance across dimensions, summed along the path.
    Euclidean,
    /// Squared Euclidean distance summed along the path, square root at the end.
    SquaredRoot,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MeasureConfig {
    pub histogram_bins: usize,
    pub histogram_scale: HistogramScale,
    /// Highest ACF lag; `None` means `l − 1`.
    pub acf_max_lag: Option<usize>,
    pub pairing: Pairing,
    pub ed_aggregation: EdAggregation,
    pub dtw_cost: DtwCost,
    pub repeats: usize,
    /// Cap on generated windows used by ED/DTW, redrawn each repeat.
    pub nn_subsample: Option<usize>,
    /// Seed for sub-sampling draws.
    pub seed: u64,
}

impl Default for MeasureConfig {
    fn default() -> Self {
        Self {
            histogram_bins: 50,
            histogram_scale: HistogramScale::Frequency,
            acf_max_lag: None,
            pairing: Pairing::NearestNeighbor,
            ed_aggregation: EdAggregation::Window,
            dtw_cost: DtwCost::Euclidean,
            repeats: 5,
            nn_subsample: None,
            seed: 0,
        }
    }
}

impl MeasureConfig {
    /// Settings under which the sine robustness experiment lands on the
    /// reference magnitudes: index pairing, density-scaled histograms,
    /// per-dimension ED and squared-cost DTW.
    pub fn calibrated() -> Self {
        Self {
            histogram_scale: HistogramScale::Density,
            pairing: Pairing::Index,
            ed_aggregation: EdAggregation::PerDimensionMean,
            dtw_cost: DtwCost::SquaredRoot,
            ..Self::default()
        }
    }

    pub fn validate(&self, seq_len: usize) -> crate::Result<()> {
        use crate::Error;
        if self.histogram_bins < 2 {
            return Err(Error::Parameter("histogram_bins must be at least 2".into()));
        }
        if self.repeats == 0 {
            return Err(Error::Parameter("repeats must be at least 1".into()));
        }
        if let Some(lag) = self.acf_max_lag {
            if lag == 0 || lag >= seq_len {
                return Err(Error::Parameter(format!(
                    "acf_max_lag must be in 1..{seq_len}, got {lag}"
                )));
            }
        }
        if self.nn_subsample == Some(0) {
            return Err(Error::Parameter("nn_subsample must be positive".into()));
        }
        Ok(())
    }

    pub fn max_lag_for(&self, seq_len: usize) -> usize {
        self.acf_max_lag.unwrap_or(seq_len.saturating_sub(1))
    }
}
