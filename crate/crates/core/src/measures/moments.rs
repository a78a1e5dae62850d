//! Skewness and kurtosis differences over per-dimension pooled values.

use crate::error::{Error, Result};
use crate::tensor::TimeSeriesTensor;

/// Third and fourth standardized moments (population, non-excess) of `values`.
pub fn standardized_moments(values: &[f64]) -> Option<(f64, f64)> {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &v in values {
        let d = v - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    let (m2, m3, m4) = (m2 / n, m3 / n, m4 / n);
    if !(m2 > 0.0) {
        return None;
    }
    Some((m3 / m2.powf(1.5), m4 / (m2 * m2)))
}

fn per_dim_moments(t: &TimeSeriesTensor, which: &str) -> Result<Vec<(f64, f64)>> {
    (0..t.dims())
        .map(|i| {
            let pool: Vec<f64> = t.pooled_dim(i).collect();
            standardized_moments(&pool).ok_or_else(|| {
                Error::Degenerate(format!(
                    "dimension {i} of the {which} tensor has zero variance"
                ))
            })
        })
        .collect()
}

fn moment_difference(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pick: fn(&(f64, f64)) -> f64,
) -> Result<f64> {
    orig.check_same_dims(gen)?;
    let a = per_dim_moments(orig, "original")?;
    let b = per_dim_moments(gen, "generated")?;
    let total: f64 = a
        .iter()
        .zip(&b)
        .map(|(x, y)| (pick(x) - pick(y)).abs())
        .sum();
    Ok(total / orig.dims() as f64)
}

/// Skewness Difference: mean over dimensions of `|skew(gen) − skew(orig)|`.
pub fn sd(orig: &TimeSeriesTensor, gen: &TimeSeriesTensor) -> Result<f64> {
    moment_difference(orig, gen, |m| m.0)
}

/// Kurtosis Difference: mean over dimensions of `|kurt(gen) − kurt(orig)|`.
pub fn kd(orig: &TimeSeriesTensor, gen: &TimeSeriesTensor) -> Result<f64> {
    moment_difference(orig, gen, |m| m.1)
}
