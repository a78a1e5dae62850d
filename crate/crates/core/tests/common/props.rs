//! Property checks and their input strategies, shared by the proptest suites
//! and the acceptance runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use tsgeval::io::{decode_tensor, encode_tensor, HEADER_LEN};
use tsgeval::measures::{
    acd, dtw, dtw_set, ed, kd, mdd, sd, DtwCost, EdAggregation, HistogramScale, Pairing,
};
use tsgeval::preprocess::{fit_normalize, segment, shuffle_windows, split, Scaler};
use tsgeval::{Error, RawSeries, Shape, TimeSeriesTensor};

pub type Check = Result<(), TestCaseError>;

pub type Pair = (TimeSeriesTensor, TimeSeriesTensor);

pub fn tensor(shape: Shape) -> impl Strategy<Value = TimeSeriesTensor> {
    prop::collection::vec(-5.0f64..5.0, shape.windows * shape.seq_len * shape.dims)
        .prop_map(move |v| TimeSeriesTensor::new(v, shape).unwrap())
}

/// Two tensors of one random shape.
pub fn pair() -> impl Strategy<Value = Pair> {
    (2usize..8, 2usize..7, 1usize..4).prop_flat_map(|(r, l, n)| {
        let s = Shape::new(r, l, n);
        (tensor(s), tensor(s))
    })
}

/// A pair plus a permutation of its windows.
pub fn pair_and_perm() -> impl Strategy<Value = (Pair, Vec<usize>)> {
    pair().prop_flat_map(|(a, b)| {
        let perm = Just((0..a.windows()).collect::<Vec<_>>()).prop_shuffle();
        (Just((a, b)), perm)
    })
}

/// Two windows of independent lengths with a shared dimension count.
pub fn windows() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, usize)> {
    (1usize..8, 1usize..8, 1usize..4).prop_flat_map(|(n, m, d)| {
        (
            prop::collection::vec(-5.0f64..5.0, n * d),
            prop::collection::vec(-5.0f64..5.0, m * d),
            Just(d),
        )
    })
}

pub fn affine() -> impl Strategy<Value = (Pair, f64, f64, bool)> {
    (pair(), 0.1f64..10.0, -5.0f64..5.0, any::<bool>())
}

pub fn pair_and_bins() -> impl Strategy<Value = (Pair, usize)> {
    (pair(), 2usize..60)
}

pub fn raw() -> impl Strategy<Value = RawSeries> {
    (2usize..120, 1usize..4).prop_flat_map(|(len, dims)| {
        prop::collection::vec(-1e3f64..1e3, len * dims)
            .prop_map(move |v| RawSeries::new(v, len, dims).unwrap())
    })
}

pub fn raw_and_len() -> impl Strategy<Value = (RawSeries, usize)> {
    raw().prop_flat_map(|s| {
        let n = s.len();
        (Just(s), 1..=n)
    })
}

pub fn raw_and_seed() -> impl Strategy<Value = (RawSeries, u64)> {
    (raw(), any::<u64>())
}

pub fn split_case() -> impl Strategy<Value = (usize, f64)> {
    (2usize..500, 0.01f64..0.99)
}

fn extreme() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(-f64::MIN_POSITIVE),
        Just(5e-324),
        Just(-5e-324),
        Just(f64::MAX),
        Just(f64::MIN),
        Just(f64::EPSILON),
        prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO,
    ]
}

/// Small tensors mixing signed zeros, subnormals, extremes and arbitrary finite values.
pub fn extreme_tensor() -> impl Strategy<Value = TimeSeriesTensor> {
    (1usize..6, 1usize..6, 1usize..4).prop_flat_map(|(r, l, n)| {
        prop::collection::vec(extreme(), r * l * n)
            .prop_map(move |v| TimeSeriesTensor::new(v, Shape::new(r, l, n)).unwrap())
    })
}

pub fn extreme_tensor_and_cut() -> impl Strategy<Value = (TimeSeriesTensor, usize)> {
    (extreme_tensor(), 1usize..64)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

fn bits(t: &TimeSeriesTensor) -> Vec<u64> {
    t.as_slice().iter().map(|v| v.to_bits()).collect()
}

pub fn non_negative((a, b): Pair) -> Check {
    for scale in [HistogramScale::Frequency, HistogramScale::Density] {
        prop_assert!(mdd(&a, &b, 10, scale).unwrap() >= 0.0);
    }
    prop_assert!(acd(&a, &b, a.seq_len() - 1).unwrap() >= 0.0);
    prop_assert!(sd(&a, &b).unwrap() >= 0.0);
    prop_assert!(kd(&a, &b).unwrap() >= 0.0);
    for pairing in [Pairing::Index, Pairing::NearestNeighbor] {
        for agg in [EdAggregation::Window, EdAggregation::PerDimensionMean] {
            prop_assert!(ed(&a, &b, pairing, agg).unwrap() >= 0.0);
        }
        for cost in [DtwCost::Euclidean, DtwCost::SquaredRoot] {
            prop_assert!(dtw_set(&a, &b, pairing, cost).unwrap() >= 0.0);
        }
    }
    Ok(())
}

pub fn identical_zero((a, _): Pair) -> Check {
    prop_assert_eq!(mdd(&a, &a, 10, HistogramScale::Density).unwrap(), 0.0);
    prop_assert_eq!(acd(&a, &a, a.seq_len() - 1).unwrap(), 0.0);
    prop_assert_eq!(sd(&a, &a).unwrap(), 0.0);
    prop_assert_eq!(kd(&a, &a).unwrap(), 0.0);
    prop_assert_eq!(
        ed(&a, &a, Pairing::NearestNeighbor, EdAggregation::Window).unwrap(),
        0.0
    );
    prop_assert_eq!(
        dtw_set(&a, &a, Pairing::Index, DtwCost::Euclidean).unwrap(),
        0.0
    );
    Ok(())
}

pub fn feature_order_invariance(((a, b), perm): (Pair, Vec<usize>)) -> Check {
    let pa = a.select(&perm).unwrap();
    let pb = b.select(&perm).unwrap();
    prop_assert!(close(
        mdd(&a, &b, 10, HistogramScale::Frequency).unwrap(),
        mdd(&pa, &pb, 10, HistogramScale::Frequency).unwrap()
    ));
    prop_assert!(close(acd(&a, &b, 1).unwrap(), acd(&a, &pb, 1).unwrap()));
    prop_assert!(close(sd(&a, &b).unwrap(), sd(&pa, &b).unwrap()));
    prop_assert!(close(kd(&a, &b).unwrap(), kd(&a, &pb).unwrap()));
    Ok(())
}

pub fn pairing_invariance(((a, b), perm): (Pair, Vec<usize>)) -> Check {
    let pa = a.select(&perm).unwrap();
    let pb = b.select(&perm).unwrap();
    let w = EdAggregation::Window;
    let e = DtwCost::Euclidean;
    // Index pairing only sees matched pairs: a joint permutation changes nothing.
    prop_assert!(close(
        ed(&a, &b, Pairing::Index, w).unwrap(),
        ed(&pa, &pb, Pairing::Index, w).unwrap()
    ));
    prop_assert!(close(
        dtw_set(&a, &b, Pairing::Index, e).unwrap(),
        dtw_set(&pa, &pb, Pairing::Index, e).unwrap()
    ));
    // Nearest-neighbour pairing searches every original window, so neither
    // side's order matters.
    let nn = Pairing::NearestNeighbor;
    prop_assert!(close(
        ed(&a, &b, nn, w).unwrap(),
        ed(&pa, &pb, nn, w).unwrap()
    ));
    prop_assert!(close(
        dtw_set(&a, &b, nn, e).unwrap(),
        dtw_set(&pa, &b, nn, e).unwrap()
    ));
    Ok(())
}

pub fn nn_below_index((a, b): Pair) -> Check {
    let nn = ed(&a, &b, Pairing::NearestNeighbor, EdAggregation::Window).unwrap();
    let idx = ed(&a, &b, Pairing::Index, EdAggregation::Window).unwrap();
    prop_assert!(nn <= idx + 1e-12);
    Ok(())
}

pub fn dtw_symmetric_bounded((x, y, d): (Vec<f64>, Vec<f64>, usize)) -> Check {
    for cost in [DtwCost::Euclidean, DtwCost::SquaredRoot] {
        let xy = dtw(&x, &y, d, cost).unwrap();
        prop_assert!(xy >= 0.0);
        prop_assert!(close(xy, dtw(&y, &x, d, cost).unwrap()));
        prop_assert_eq!(dtw(&x, &x, d, cost).unwrap(), 0.0);
    }
    // Equal lengths: the diagonal path is one candidate.
    let n = x.len().min(y.len()) / d;
    let (x, y) = (&x[..n * d], &y[..n * d]);
    let steps: Vec<f64> = (0..n)
        .map(|j| {
            (0..d)
                .map(|i| (x[j * d + i] - y[j * d + i]).powi(2))
                .sum::<f64>()
        })
        .collect();
    let diag: f64 = steps.iter().map(|s| s.sqrt()).sum();
    prop_assert!(dtw(x, y, d, DtwCost::Euclidean).unwrap() <= diag + 1e-12);
    let diag_sq = steps.iter().sum::<f64>().sqrt();
    prop_assert!(dtw(x, y, d, DtwCost::SquaredRoot).unwrap() <= diag_sq + 1e-12);
    Ok(())
}

pub fn moments_affine_invariant(((a, b), scale, shift, flip): (Pair, f64, f64, bool)) -> Check {
    let s = if flip { -scale } else { scale };
    let moved = b.map(|v| s * v + shift).unwrap();
    prop_assert!((kd(&a, &b).unwrap() - kd(&a, &moved).unwrap()).abs() < 1e-8);
    if !flip {
        prop_assert!((sd(&a, &b).unwrap() - sd(&a, &moved).unwrap()).abs() < 1e-8);
    }
    // Moving both inputs alike keeps the skewness gap even under reflection.
    let moved_a = a.map(|v| s * v + shift).unwrap();
    prop_assert!((sd(&a, &b).unwrap() - sd(&moved_a, &moved).unwrap()).abs() < 1e-8);
    Ok(())
}

pub fn mdd_bounded(((a, b), bins): (Pair, usize)) -> Check {
    let v = mdd(&a, &b, bins, HistogramScale::Frequency).unwrap();
    prop_assert!((0.0..=2.0).contains(&v), "mdd = {}", v);
    Ok(())
}

pub fn window_count((s, l): (RawSeries, usize)) -> Check {
    let t = segment(&s, l, 1).unwrap();
    prop_assert_eq!(t.windows(), s.len() - l + 1);
    prop_assert_eq!(t.seq_len(), l);
    let r = t.windows() - 1;
    prop_assert_eq!(t.window(r), &s.as_slice()[r * s.dims()..(r + l) * s.dims()]);
    Ok(())
}

fn sorted_windows(t: &TimeSeriesTensor) -> Vec<Vec<u64>> {
    let mut w: Vec<Vec<u64>> = t
        .iter_windows()
        .map(|w| w.iter().map(|v| v.to_bits()).collect())
        .collect();
    w.sort();
    w
}

pub fn shuffle_multiset((s, seed): (RawSeries, u64)) -> Check {
    let t = segment(&s, (s.len() / 3).max(1), 1).unwrap();
    let shuffled = shuffle_windows(&t, seed);
    prop_assert_eq!(sorted_windows(&t), sorted_windows(&shuffled));
    prop_assert_eq!(shuffle_windows(&t, seed), shuffled);
    Ok(())
}

pub fn split_exact((r, ratio): (usize, f64)) -> Check {
    let s = RawSeries::univariate((0..r).map(|v| v as f64).collect()).unwrap();
    let t = segment(&s, 1, 1).unwrap();
    let k = (ratio * r as f64 + 1e-9).floor() as usize;
    match split(&t, ratio) {
        Ok((a, b)) => {
            prop_assert_eq!(a.windows(), k);
            prop_assert_eq!(b.windows(), r - k);
        }
        Err(e) => prop_assert!((k == 0 || k == r) && matches!(e, Error::Split(_))),
    }
    Ok(())
}

pub fn normalized_unit(s: RawSeries) -> Check {
    if s.len() < 4 {
        return Ok(());
    }
    let t = segment(&s, 3, 1).unwrap();
    let (scaler, norm) = fit_normalize(&t).unwrap();
    for i in 0..norm.dims() {
        let (lo, hi) = norm
            .pooled_dim(i)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(v), b.max(v))
            });
        if scaler.max[i] > scaler.min[i] {
            prop_assert!(
                lo.abs() <= 1e-12 && (hi - 1.0).abs() <= 1e-12,
                "dim {}: [{}, {}]",
                i,
                lo,
                hi
            );
        } else {
            prop_assert!(lo == 0.5 && hi == 0.5);
        }
    }
    let back = scaler.inverse(&norm).unwrap();
    for (x, y) in back.as_slice().iter().zip(t.as_slice()) {
        prop_assert!((x - y).abs() <= 1e-9 * (1.0 + y.abs()));
    }
    prop_assert_eq!(Scaler::from_text(&scaler.to_text()).unwrap(), scaler);
    Ok(())
}

pub fn tsgt_round_trip(t: TimeSeriesTensor) -> Check {
    let bytes = encode_tensor(&t);
    prop_assert_eq!(bytes.len(), HEADER_LEN + t.as_slice().len() * 8);
    let back = decode_tensor(&bytes).unwrap();
    prop_assert_eq!(back.shape(), t.shape());
    prop_assert_eq!(bits(&back), bits(&t));
    Ok(())
}

pub fn tsgt_truncation_rejected((t, cut): (TimeSeriesTensor, usize)) -> Check {
    let bytes = encode_tensor(&t);
    let cut = cut.min(bytes.len());
    let err = decode_tensor(&bytes[..bytes.len() - cut]).unwrap_err();
    prop_assert!(
        matches!(err, Error::Size { .. } | Error::Format(_)),
        "{:?}",
        err
    );
    prop_assert_eq!(err.exit_code(), 2);
    Ok(())
}
