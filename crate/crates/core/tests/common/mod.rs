//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsgeval::measures::DtwCost;
use tsgeval::{Shape, TimeSeriesTensor};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_tensor(r: &mut impl Rng, shape: Shape) -> TimeSeriesTensor {
    let len = shape.windows * shape.seq_len * shape.dims;
    TimeSeriesTensor::new((0..len).map(|_| r.gen_range(-3.0..3.0)).collect(), shape).unwrap()
}

/// Minimum DTW cost by enumerating every monotone warping path from
/// `(0, 0)` to `(n−1, m−1)`, summing step costs in path order.
pub fn dtw_by_paths(a: &[f64], b: &[f64], dims: usize, cost: DtwCost) -> f64 {
    let (n, m) = (a.len() / dims, b.len() / dims);
    let step = |i: usize, j: usize| {
        let s: f64 = (0..dims)
            .map(|d| (a[i * dims + d] - b[j * dims + d]).powi(2))
            .sum();
        match cost {
            DtwCost::Euclidean => s.sqrt(),
            DtwCost::SquaredRoot => s,
        }
    };
    fn walk(
        i: usize,
        j: usize,
        n: usize,
        m: usize,
        acc: f64,
        step: &dyn Fn(usize, usize) -> f64,
        best: &mut f64,
    ) {
        let acc = acc + step(i, j);
        if i == n - 1 && j == m - 1 {
            *best = best.min(acc);
            return;
        }
        if i + 1 < n {
            walk(i + 1, j, n, m, acc, step, best);
        }
        if j + 1 < m {
            walk(i, j + 1, n, m, acc, step, best);
        }
        if i + 1 < n && j + 1 < m {
            walk(i + 1, j + 1, n, m, acc, step, best);
        }
    }
    let mut best = f64::INFINITY;
    walk(0, 0, n, m, 0.0, &step, &mut best);
    match cost {
        DtwCost::Euclidean => best,
        DtwCost::SquaredRoot => best.sqrt(),
    }
}

/// Mean silhouette coefficient of a two-label 2-D point set.
pub fn silhouette(points: &[(f64, f64)], labels: &[bool]) -> f64 {
    let dist = |p: (f64, f64), q: (f64, f64)| ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt();
    let mut total = 0.0;
    for (i, &p) in points.iter().enumerate() {
        let (mut same, mut ns, mut other, mut no) = (0.0, 0usize, 0.0, 0usize);
        for (j, &q) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            if labels[i] == labels[j] {
                same += dist(p, q);
                ns += 1;
            } else {
                other += dist(p, q);
                no += 1;
            }
        }
        let a = same / ns as f64;
        let b = other / no as f64;
        total += (b - a) / a.max(b);
    }
    total / points.len() as f64
}

/// Chi-square survival function for even degrees of freedom `2m`:
/// `exp(−x/2) · Σ_{k<m} (x/2)^k / k!`.
pub fn chi2_sf_even(x: f64, df: u32) -> f64 {
    assert!(df.is_multiple_of(2));
    let h = x / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..df / 2 {
        term *= h / k as f64;
        sum += term;
    }
    (-h).exp() * sum
}

/// Student-t CDF for odd degrees of freedom via the finite trigonometric series.
pub fn t_cdf_odd(t: f64, df: u32) -> f64 {
    assert!(df % 2 == 1);
    let v = df as f64;
    let theta = (t / v.sqrt()).atan();
    let (s, c) = theta.sin_cos();
    let mut sum = 0.0;
    if df > 1 {
        let mut term = c;
        sum = term;
        let mut k = 3;
        while k < df {
            term *= c * c * (k - 1) as f64 / k as f64;
            sum += term;
            k += 2;
        }
    }
    0.5 + (theta + s * sum) / std::f64::consts::PI
}

/// Student-t CDF for even degrees of freedom via the finite series.
pub fn t_cdf_even(t: f64, df: u32) -> f64 {
    assert!(df.is_multiple_of(2));
    let v = df as f64;
    let theta = (t / v.sqrt()).atan();
    let (s, c) = theta.sin_cos();
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 2;
    while k < df {
        term *= c * c * (k - 1) as f64 / k as f64;
        sum += term;
        k += 2;
    }
    0.5 + 0.5 * s * sum
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}
