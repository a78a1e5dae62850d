//! Euclidean distance between paired windows and brute-force nearest-neighbor pairing.

use rayon::prelude::*;

use super::{EdAggregation, Pairing};
use crate::error::{Error, Result};
use crate::tensor::TimeSeriesTensor;

/// Window-level Euclidean distance between two step-major `l × dims` windows.
pub fn window_ed(a: &[f64], b: &[f64], dims: usize, agg: EdAggregation) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    match agg {
        EdAggregation::Window => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        EdAggregation::PerDimensionMean => {
            let mut sums = vec![0.0; dims];
            for (k, (x, y)) in a.iter().zip(b).enumerate() {
                sums[k % dims] += (x - y) * (x - y);
            }
            sums.iter().map(|s| s.sqrt()).sum::<f64>() / dims as f64
        }
    }
}

/// Squared distance, abandoning once the partial sum exceeds `bound`.
#[inline]
fn sq_dist_bounded(a: &[f64], b: &[f64], bound: f64) -> Option<f64> {
    let mut s = 0.0;
    for (ca, cb) in a.chunks(8).zip(b.chunks(8)) {
        for (x, y) in ca.iter().zip(cb) {
            let d = x - y;
            s += d * d;
        }
        if s > bound {
            return None;
        }
    }
    Some(s)
}

/// For each window of `queries`, the index of its Euclidean-nearest window in
/// `reference`. Ties go to the smallest reference index.
pub fn nearest_neighbors(
    reference: &TimeSeriesTensor,
    queries: &TimeSeriesTensor,
) -> Result<Vec<usize>> {
    reference.check_same_step_shape(queries)?;
    let r_count = reference.windows();
    Ok((0..queries.windows())
        .into_par_iter()
        .map(|q| {
            let qw = queries.window(q);
            // Seed the bound with the same-index window; exact match short-circuits the scan.
            let start = q.min(r_count - 1);
            let mut best_idx = start;
            let mut best = sq_dist_bounded(reference.window(start), qw, f64::INFINITY).unwrap();
            for r in 0..r_count {
                if r == start {
                    continue;
                }
                if let Some(d) = sq_dist_bounded(reference.window(r), qw, best) {
                    if d < best || (d == best && r < best_idx) {
                        best = d;
                        best_idx = r;
                    }
                }
            }
            best_idx
        })
        .collect())
}

/// `(orig index, gen index)` pairs for set-level ED/DTW.
pub fn pair_windows(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pairing: Pairing,
) -> Result<Vec<(usize, usize)>> {
    match pairing {
        Pairing::Index => {
            if orig.windows() != gen.windows() {
                return Err(Error::Pairing(format!(
                    "index pairing needs equal window counts, got {} and {}",
                    orig.windows(),
                    gen.windows()
                )));
            }
            Ok((0..orig.windows()).map(|r| (r, r)).collect())
        }
        Pairing::NearestNeighbor => Ok(nearest_neighbors(orig, gen)?
            .into_iter()
            .enumerate()
            .map(|(g, o)| (o, g))
            .collect()),
    }
}

pub(crate) fn mean_over_pairs(
    pairs: &[(usize, usize)],
    f: impl Fn(usize, usize) -> f64 + Sync,
) -> f64 {
    let per_pair: Vec<f64> = pairs.par_iter().map(|&(o, g)| f(o, g)).collect();
    per_pair.iter().sum::<f64>() / per_pair.len() as f64
}

pub fn ed_pairs(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pairs: &[(usize, usize)],
    agg: EdAggregation,
) -> f64 {
    let dims = orig.dims();
    mean_over_pairs(pairs, |o, g| {
        window_ed(orig.window(o), gen.window(g), dims, agg)
    })
}

/// Mean window-level Euclidean distance under `pairing`.
pub fn ed(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    pairing: Pairing,
    agg: EdAggregation,
) -> Result<f64> {
    orig.check_same_step_shape(gen)?;
    let pairs = pair_windows(orig, gen, pairing)?;
    Ok(ed_pairs(orig, gen, &pairs, agg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Shape;

    #[test]
    fn root_three() {
        let a = TimeSeriesTensor::new(vec![0.0; 3], Shape::new(1, 3, 1)).unwrap();
        let b = TimeSeriesTensor::new(vec![1.0; 3], Shape::new(1, 3, 1)).unwrap();
        for agg in [EdAggregation::Window, EdAggregation::PerDimensionMean] {
            assert_eq!(ed(&a, &b, Pairing::Index, agg).unwrap(), 3f64.sqrt());
        }
    }

    #[test]
    fn per_dimension_mean() {
        // dim 0 differs by (3, 4) → 5; dim 1 identical → 0.
        let a = [0.0, 1.0, 0.0, 2.0];
        let b = [3.0, 1.0, 4.0, 2.0];
        assert_eq!(window_ed(&a, &b, 2, EdAggregation::PerDimensionMean), 2.5);
        assert_eq!(window_ed(&a, &b, 2, EdAggregation::Window), 5.0);
    }

    #[test]
    fn index_pairing_needs_equal_counts() {
        let a = TimeSeriesTensor::new(vec![0.0; 4], Shape::new(2, 2, 1)).unwrap();
        let b = TimeSeriesTensor::new(vec![0.0; 6], Shape::new(3, 2, 1)).unwrap();
        assert!(matches!(
            ed(&a, &b, Pairing::Index, EdAggregation::Window),
            Err(Error::Pairing(_))
        ));
        assert_eq!(
            ed(&a, &b, Pairing::NearestNeighbor, EdAggregation::Window).unwrap(),
            0.0
        );
    }

    #[test]
    fn nearest_matches_linear_scan() {
        let reference = TimeSeriesTensor::from_fn(Shape::new(40, 3, 2), |r, j, i| {
            (((r * 7919 + j * 104729 + i * 13) % 1000) as f64) / 100.0
        })
        .unwrap();
        let queries = TimeSeriesTensor::from_fn(Shape::new(25, 3, 2), |r, j, i| {
            (((r * 6271 + j * 3571 + i * 17) % 1000) as f64) / 100.0
        })
        .unwrap();
        let nn = nearest_neighbors(&reference, &queries).unwrap();
        for (q, &got) in nn.iter().enumerate() {
            let d = |r: usize| -> f64 {
                reference
                    .window(r)
                    .iter()
                    .zip(queries.window(q))
                    .map(|(x, y)| (x - y).powi(2))
                    .sum()
            };
            let best = (0..40).min_by(|&x, &y| d(x).total_cmp(&d(y))).unwrap();
            assert_eq!(d(got), d(best));
        }
    }

    #[test]
    fn ties_go_to_smallest_index() {
        let reference = TimeSeriesTensor::new(vec![1.0, -1.0, 1.0], Shape::new(3, 1, 1)).unwrap();
        let queries = TimeSeriesTensor::new(vec![0.0, 0.0, 0.0], Shape::new(3, 1, 1)).unwrap();
        assert_eq!(
            nearest_neighbors(&reference, &queries).unwrap(),
            vec![0, 0, 0]
        );
    }
}
