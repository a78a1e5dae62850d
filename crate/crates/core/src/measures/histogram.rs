//! Marginal Distribution Difference.

use super::HistogramScale;
use crate::error::{Error, Result};
use crate::tensor::TimeSeriesTensor;

/// Equal-width bins spanning `[lo, hi]`. Values outside clamp to the end bins.
#[derive(Debug, Clone, Copy)]
pub struct Bins {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl Bins {
    pub fn spanning(values: impl Iterator<Item = f64>, count: usize) -> Self {
        let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
            (a.min(v), b.max(v))
        });
        Self { lo, hi, count }
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo) / self.count as f64
    }

    /// A zero-width range collapses everything into bin 0.
    pub fn is_degenerate(&self) -> bool {
        !(self.hi > self.lo)
    }

    #[inline]
    pub fn index(&self, v: f64) -> usize {
        if self.is_degenerate() {
            return 0;
        }
        let k = ((v - self.lo) / self.width()).floor();
        if k <= 0.0 {
            0
        } else {
            (k as usize).min(self.count - 1)
        }
    }

    /// Relative frequencies of `values` in these bins.
    pub fn frequencies(&self, values: impl Iterator<Item = f64>) -> Vec<f64> {
        let mut counts = vec![0usize; self.count];
        let mut n = 0usize;
        for v in values {
            counts[self.index(v)] += 1;
            n += 1;
        }
        counts.into_iter().map(|c| c as f64 / n as f64).collect()
    }

    pub fn centers(&self) -> Vec<f64> {
        let w = self.width();
        (0..self.count)
            .map(|k| self.lo + (k as f64 + 0.5) * w)
            .collect()
    }
}

/// For every (time step, dimension) cell, histogram both tensors on bins fixed
/// by the original's range there, and average the absolute per-bin gap over
/// all cells and bins.
pub fn mdd(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    bins: usize,
    scale: HistogramScale,
) -> Result<f64> {
    orig.check_same_step_shape(gen)?;
    if bins < 2 {
        return Err(Error::Parameter("MDD needs at least 2 bins".into()));
    }
    let (l, dims) = (orig.seq_len(), orig.dims());
    let mut total = 0.0;
    for j in 0..l {
        for i in 0..dims {
            let b = Bins::spanning(orig.cross_section(j, i), bins);
            let fo = b.frequencies(orig.cross_section(j, i));
            let fg = b.frequencies(gen.cross_section(j, i));
            let gap: f64 = fo.iter().zip(&fg).map(|(a, c)| (a - c).abs()).sum();
            total += match scale {
                HistogramScale::Density if !b.is_degenerate() => gap / b.width(),
                _ => gap,
            };
        }
    }
    Ok(total / (l * dims * bins) as f64)
}
