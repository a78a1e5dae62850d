//! Dependent multivariate dynamic time warping.

use super::distance::{mean_over_pairs, pair_windows};
use super::{DtwCost, Pairing};
use crate::error::{Error, Result};
use crate::tensor::TimeSeriesTensor;

#[inline]
fn step_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// DTW between two step-major windows of `dims` channels (lengths may differ).
///
/// Warping steps are `(1,0)`, `(0,1)` and `(1,1)` from the first pair of steps
/// to the last. With [`DtwCost::Euclidean`] the path cost is the sum of
/// cross-dimension Euclidean step distances; with [`DtwCost::SquaredRoot`] it
/// is the square root of the summed squared step distances.
pub fn dtw(a: &[f64], b: &[f64], dims: usize, cost: DtwCost) -> Result<f64> {
    if dims == 0 || !a.len().is_multiple_of(dims) || !b.len().is_multiple_of(dims) {
        return Err(Error::Shape(format!(
            "window lengths {} and {} are not multiples of {dims} dimensions",
            a.len(),
            b.len()
        )));
    }
    let (n, m) = (a.len() / dims, b.len() / dims);
    if n == 0 || m == 0 {
        return Err(Error::Shape("DTW needs non-empty windows".into()));
    }
    let step = |i: usize, j: usize| {
        let s = step_sq(&a[i * dims..(i + 1) * dims], &b[j * dims..(j + 1) * dims]);
        match cost {
            DtwCost::Euclidean => s.sqrt(),
            DtwCost::SquaredRoot => s,
        }
    };
    // Rolling rows over the second series; `prev[j]` holds D(i-1, j).
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![f64::INFINITY; m];
    for i in 0..n {
        for j in 0..m {
            let best = if i == 0 && j == 0 {
                0.0
            } else {
                let up = prev[j];
                let left = if j > 0 { cur[j - 1] } else { f64::INFINITY };
                let diag = if j > 0 { prev[j - 1] } else { f64::INFINITY };
                up.min(left).min(diag)
            };
            cur[j] = best + step(i, j);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    let total = prev[m - 1];
    Ok(match cost {
        DtwCost::Euclidean => total,
        DtwCost::SquaredRoot => total.sqrt(),
    })
}

/// Mean window-level DTW over pairs chosen by `pairing`. Nearest-neighbor
/// pairing reuses each generated window's Euclidean-nearest original.
pub fn dtw_set(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pairing: Pairing,
    cost: DtwCost,
) -> Result<f64> {
    orig.check_same_dims(gen)?;
    if pairing == Pairing::NearestNeighbor {
        orig.check_same_step_shape(gen)?;
    }
    let pairs = pair_windows(orig, gen, pairing)?;
    Ok(dtw_pairs(orig, gen, &pairs, cost))
}

pub fn dtw_pairs(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pairs: &[(usize, usize)],
    cost: DtwCost,
) -> f64 {
    let dims = orig.dims();
    mean_over_pairs(pairs, |o, g| {
        dtw(orig.window(o), gen.window(g), dims, cost).expect("dims checked by caller")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicated_step_aligns_for_free() {
        let d = dtw(
            &[1.0, 2.0, 3.0],
            &[1.0, 2.0, 2.0, 3.0],
            1,
            DtwCost::Euclidean,
        )
        .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn identical_windows() {
        let w = [0.1, 0.5, -0.3, 0.2, 0.9, 0.0];
        for cost in [DtwCost::Euclidean, DtwCost::SquaredRoot] {
            assert_eq!(dtw(&w, &w, 2, cost).unwrap(), 0.0);
        }
    }

    #[test]
    fn small_hand_case() {
        // a = (0, 2), b = (1): both steps of a align to b's only step, cost 1 + 1.
        assert_eq!(
            dtw(&[0.0, 2.0], &[1.0], 1, DtwCost::Euclidean).unwrap(),
            2.0
        );
        assert_eq!(
            dtw(&[0.0, 2.0], &[1.0], 1, DtwCost::SquaredRoot).unwrap(),
            2f64.sqrt()
        );
        // Multivariate step cost is the Euclidean norm across dims.
        assert_eq!(
            dtw(&[0.0, 0.0], &[3.0, 4.0], 2, DtwCost::Euclidean).unwrap(),
            5.0
        );
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            dtw(&[0.0; 3], &[0.0; 4], 2, DtwCost::Euclidean),
            Err(Error::Shape(_))
        ));
    }
}
