//! Sample autocorrelation and the ACD measure.

use crate::error::{Error, Result};
use crate::tensor::TimeSeriesTensor;

/// Biased sample autocorrelation at lags `0..=max_lag`:
/// `r_k = Σ_t (x_t − μ)(x_{t+k} − μ) / Σ_t (x_t − μ)²`.
///
/// Returns `None` for a zero-variance series. Lags at or beyond the series
/// length are 0.
pub fn sample_acf(x: &[f64], max_lag: usize) -> Option<Vec<f64>> {
    let n = x.len();
    if n == 0 {
        return None;
    }
    let mean = x.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let denom: f64 = centered.iter().map(|v| v * v).sum();
    if denom <= 0.0 {
        return None;
    }
    Some(
        (0..=max_lag)
            .map(|k| {
                if k >= n {
                    return 0.0;
                }
                let num: f64 = centered[..n - k]
                    .iter()
                    .zip(&centered[k..])
                    .map(|(a, b)| a * b)
                    .sum();
                num / denom
            })
            .collect(),
    )
}

/// Window-averaged ACF per dimension: `out[i][k-1]` is the mean over windows of
/// the lag-`k` autocorrelation of dimension `i`, for `k = 1..=max_lag`.
///
/// A window whose dimension is constant contributes 0 at every lag; the count
/// of such windows is returned alongside.
pub fn mean_window_acf(t: &TimeSeriesTensor, max_lag: usize) -> (Vec<Vec<f64>>, usize) {
    let (l, dims) = (t.seq_len(), t.dims());
    let mut sums = vec![vec![0.0; max_lag]; dims];
    let mut degenerate = 0;
    let mut buf = vec![0.0; l];
    for w in t.iter_windows() {
        for (i, sum) in sums.iter_mut().enumerate() {
            for (j, b) in buf.iter_mut().enumerate() {
                *b = w[j * dims + i];
            }
            match sample_acf(&buf, max_lag) {
                Some(acf) => {
                    for (s, a) in sum.iter_mut().zip(&acf[1..]) {
                        *s += a;
                    }
                }
                None => degenerate += 1,
            }
        }
    }
    let r = t.windows() as f64;
    for sum in &mut sums {
        for s in sum.iter_mut() {
            *s /= r;
        }
    }
    (sums, degenerate)
}

/// AutoCorrelation Difference: mean over dimensions and lags `1..=max_lag` of
/// the absolute gap between window-averaged ACFs.
pub fn acd(orig: &TimeSeriesTensor, gen: &TimeSeriesTensor, max_lag: usize) -> Result<f64> {
    orig.check_same_step_shape(gen)?;
    if max_lag == 0 || max_lag >= orig.seq_len() {
        return Err(Error::Parameter(format!(
            "ACF max_lag must be in 1..{}, got {max_lag}",
            orig.seq_len()
        )));
    }
    let (a, _) = mean_window_acf(orig, max_lag);
    let (b, _) = mean_window_acf(gen, max_lag);
    let total: f64 = a
        .iter()
        .zip(&b)
        .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs()))
        .sum();
    Ok(total / (orig.dims() * max_lag) as f64)
}
