//! Standard preprocessing: period estimation, sliding-window segmentation,
//! shuffling, train/test split and min-max normalization.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::acf::sample_acf;
use crate::tensor::{RawSeries, Shape, TimeSeriesTensor};

/// Minimum autocorrelation a peak needs to count as a period.
pub const PERIOD_ACF_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeqLen {
    /// Estimate from the autocorrelation function.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PreprocessConfig {
    pub seq_len: SeqLen,
    pub stride: usize,
    pub split_ratio: f64,
    pub shuffle_seed: u64,
    pub normalize: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        Self {
            seq_len: SeqLen::Auto,
            stride: 1,
            split_ratio: 0.9,
            shuffle_seed: 0,
            normalize: true,
        }
    }
}

/// Seeded RNG used for every shuffle in the crate.
pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Smallest lag `k ≥ 2` at which the dimension-averaged ACF has a local maximum
/// above [`PERIOD_ACF_THRESHOLD`]. `Ok(None)` means no period was found and
/// the caller has to choose `l` itself.
pub fn estimate_period(raw: &RawSeries, max_lag: usize) -> Result<Option<usize>> {
    if max_lag >= raw.len() {
        return Err(Error::Parameter(format!(
            "max_lag {max_lag} must be below the series length {}",
            raw.len()
        )));
    }
    // One extra lag so the last candidate can be checked on both sides.
    let upto = (max_lag + 1).min(raw.len() - 1);
    let mut avg = vec![0.0; upto + 1];
    let mut used = 0;
    for i in 0..raw.dims() {
        if let Some(acf) = sample_acf(&raw.column(i), upto) {
            for (a, v) in avg.iter_mut().zip(&acf) {
                *a += v;
            }
            used += 1;
        }
    }
    if used == 0 {
        return Err(Error::Degenerate(
            "every dimension is constant; autocorrelation undefined".into(),
        ));
    }
    for a in &mut avg {
        *a /= used as f64;
    }
    Ok((2..=max_lag.min(upto.saturating_sub(1)))
        .find(|&k| avg[k] > PERIOD_ACF_THRESHOLD && avg[k] > avg[k - 1] && avg[k] >= avg[k + 1]))
}

/// Sliding windows of length `l`, starting every `stride` points.
/// For stride 1 this yields `R = L − l + 1` windows.
pub fn segment(raw: &RawSeries, l: usize, stride: usize) -> Result<TimeSeriesTensor> {
    if l == 0 || l > raw.len() {
        return Err(Error::Shape(format!(
            "window length {l} must be in 1..={}",
            raw.len()
        )));
    }
    if stride == 0 {
        return Err(Error::Parameter("stride must be at least 1".into()));
    }
    let dims = raw.dims();
    let windows = (raw.len() - l) / stride + 1;
    let mut data = Vec::with_capacity(windows * l * dims);
    for r in 0..windows {
        let start = r * stride * dims;
        data.extend_from_slice(&raw.as_slice()[start..start + l * dims]);
    }
    TimeSeriesTensor::new(data, Shape::new(windows, l, dims))
}

/// Seeded permutation of the windows.
pub fn shuffle_windows(t: &TimeSeriesTensor, seed: u64) -> TimeSeriesTensor {
    let mut order: Vec<usize> = (0..t.windows()).collect();
    order.shuffle(&mut rng(seed));
    t.select(&order).expect("permutation indices are in range")
}

/// Number of front windows assigned to the first part of a `ratio` split.
pub(crate) fn split_point(total: usize, ratio: f64) -> Result<usize> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Parameter(format!(
            "split ratio must be in (0, 1), got {ratio}"
        )));
    }
    // Guard against 0.9 · 10 landing a hair below 9.
    let k = (ratio * total as f64 + 1e-9).floor() as usize;
    if k == 0 || k >= total {
        return Err(Error::Split(format!(
            "ratio {ratio} on {total} windows leaves one side empty ({k} / {})",
            total.saturating_sub(k)
        )));
    }
    Ok(k)
}

/// Front `floor(ratio · R)` windows become train, the rest test.
pub fn split(t: &TimeSeriesTensor, ratio: f64) -> Result<(TimeSeriesTensor, TimeSeriesTensor)> {
    let k = split_point(t.windows(), ratio)?;
    Ok((t.slice_windows(0, k)?, t.slice_windows(k, t.windows())?))
}

/// Per-dimension min/max recorded from the training split.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Scaler {
    pub fn fit(t: &TimeSeriesTensor) -> Self {
        let dims = t.dims();
        let mut min = vec![f64::INFINITY; dims];
        let mut max = vec![f64::NEG_INFINITY; dims];
        for (k, &v) in t.as_slice().iter().enumerate() {
            let i = k % dims;
            min[i] = min[i].min(v);
            max[i] = max[i].max(v);
        }
        Self { min, max }
    }

    pub fn dims(&self) -> usize {
        self.min.len()
    }

    /// `(x − min) / (max − min)`; constant dimensions map to 0.5. No clipping.
    pub fn transform(&self, t: &TimeSeriesTensor) -> Result<TimeSeriesTensor> {
        self.check(t)?;
        let dims = self.dims();
        let data = t
            .as_slice()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let i = k % dims;
                let span = self.max[i] - self.min[i];
                if span > 0.0 {
                    (v - self.min[i]) / span
                } else {
                    0.5
                }
            })
            .collect();
        TimeSeriesTensor::new(data, t.shape())
    }

    /// Maps normalized values back to the original scale. Constant dimensions
    /// come back as their single recorded value.
    pub fn inverse(&self, t: &TimeSeriesTensor) -> Result<TimeSeriesTensor> {
        self.check(t)?;
        let dims = self.dims();
        let data = t
            .as_slice()
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                let i = k % dims;
                let span = self.max[i] - self.min[i];
                if span > 0.0 {
                    v * span + self.min[i]
                } else {
                    self.min[i]
                }
            })
            .collect();
        TimeSeriesTensor::new(data, t.shape())
    }

    fn check(&self, t: &TimeSeriesTensor) -> Result<()> {
        if t.dims() != self.dims() {
            return Err(Error::Shape(format!(
                "scaler fitted on {} dimensions, tensor has {}",
                self.dims(),
                t.dims()
            )));
        }
        Ok(())
    }

    /// Text form: a `dim,min,max` header and one line per dimension.
    pub fn to_text(&self) -> String {
        let mut s = String::from("dim,min,max\n");
        for (i, (lo, hi)) in self.min.iter().zip(&self.max).enumerate() {
            let _ = writeln!(s, "{i},{lo:?},{hi:?}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut min = Vec::new();
        let mut max = Vec::new();
        for (n, line) in text.lines().enumerate().skip(1) {
            if line.trim().is_empty() {
                continue;
            }
            let row = n + 1;
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if cells.len() != 3 {
                return Err(Error::Structure(format!(
                    "scaler row {row} has {} fields, expected 3",
                    cells.len()
                )));
            }
            let idx: usize = cells[0].parse().map_err(|_| Error::Parse {
                row,
                column: 1,
                message: format!("bad dimension index {:?}", cells[0]),
            })?;
            if idx != min.len() {
                return Err(Error::Structure(format!(
                    "scaler row {row} has dimension {idx}, expected {}",
                    min.len()
                )));
            }
            let num = |c: usize| -> Result<f64> {
                cells[c].parse().map_err(|_| Error::Parse {
                    row,
                    column: c + 1,
                    message: format!("bad number {:?}", cells[c]),
                })
            };
            min.push(num(1)?);
            max.push(num(2)?);
        }
        Ok(Self { min, max })
    }
}

pub fn fit_normalize(train: &TimeSeriesTensor) -> Result<(Scaler, TimeSeriesTensor)> {
    let scaler = Scaler::fit(train);
    let normalized = scaler.transform(train)?;
    Ok((scaler, normalized))
}

pub fn apply_normalize(scaler: &Scaler, t: &TimeSeriesTensor) -> Result<TimeSeriesTensor> {
    scaler.transform(t)
}

#[derive(Debug, Clone)]
pub struct PreprocessOutput {
    pub train: TimeSeriesTensor,
    pub test: TimeSeriesTensor,
    /// `None` when normalization was disabled.
    pub scaler: Option<Scaler>,
    /// The window length actually used.
    pub seq_len: usize,
}

/// Segment, shuffle, split, then fit normalization on train and apply it to both.
pub fn run_pipeline(raw: &RawSeries, cfg: &PreprocessConfig) -> Result<PreprocessOutput> {
    let l = match cfg.seq_len {
        SeqLen::Fixed(l) => l,
        SeqLen::Auto => {
            let max_lag = (raw.len() / 2).max(1).min(raw.len().saturating_sub(1));
            estimate_period(raw, max_lag)?.ok_or_else(|| {
                Error::Degenerate(
                    "no autocorrelation period found; set the window length explicitly".into(),
                )
            })?
        }
    };
    let windows = segment(raw, l, cfg.stride)?;
    let shuffled = shuffle_windows(&windows, cfg.shuffle_seed);
    let (train, test) = split(&shuffled, cfg.split_ratio)?;
    if cfg.normalize {
        let (scaler, train) = fit_normalize(&train)?;
        let test = scaler.transform(&test)?;
        Ok(PreprocessOutput {
            train,
            test,
            scaler: Some(scaler),
            seq_len: l,
        })
    } else {
        Ok(PreprocessOutput {
            train,
            test,
            scaler: None,
            seq_len: l,
        })
    }
}
