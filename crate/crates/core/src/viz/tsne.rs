//! Exact t-SNE of flattened windows, original vs generated.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Source;
use crate::error::{Error, Result};
use crate::preprocess::rng;
use crate::tensor::TimeSeriesTensor;

/// Binary-search tolerance on the entropy of each conditional distribution (nats).
const ENTROPY_TOL: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TsneConfig {
    pub perplexity: f64,
    pub iterations: usize,
    pub learning_rate: f64,
    pub early_exaggeration: f64,
    pub exaggeration_iters: usize,
    pub initial_momentum: f64,
    pub final_momentum: f64,
    pub momentum_switch: usize,
    /// Maximum windows embedded per source.
    pub cap: usize,
    pub seed: u64,
    /// KL divergence is recorded every this many iterations (and at the end).
    pub kl_every: usize,
}

impl Default for TsneConfig {
    fn default() -> Self {
        Self {
            perplexity: 30.0,
            iterations: 1000,
            learning_rate: 200.0,
            early_exaggeration: 12.0,
            exaggeration_iters: 250,
            initial_momentum: 0.5,
            final_momentum: 0.8,
            momentum_switch: 250,
            cap: 2000,
            seed: 0,
            kl_every: 50,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedPoint {
    pub x: f64,
    pub y: f64,
    pub label: Source,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding2D {
    pub points: Vec<EmbeddedPoint>,
    /// `(iteration, KL(P‖Q))`, starting with the random initialization.
    pub kl_trace: KlTrace,
    pub config: TsneConfig,
}

impl Embedding2D {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,y,label\n");
        for p in &self.points {
            let _ = writeln!(s, "{:?},{:?},{}", p.x, p.y, p.label.as_str());
        }
        s
    }
}

/// Pairwise squared Euclidean distances, row-major `n × n`.
pub fn squared_distances(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points.len();
    let mut d = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v: f64 = points[i]
                .iter()
                .zip(&points[j])
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            d[i * n + j] = v;
            d[j * n + i] = v;
        }
    }
    d
}

/// Conditional affinities `p_{j|i}` (row-major, zero diagonal) with each row's
/// Gaussian precision bisected to hit `perplexity`; returns the achieved
/// perplexity per row alongside.
pub fn conditional_affinities(dist2: &[f64], n: usize, perplexity: f64) -> (Vec<f64>, Vec<f64>) {
    let target = perplexity.ln();
    let mut p = vec![0.0; n * n];
    let mut achieved = vec![0.0; n];
    let mut row = vec![0.0; n];
    for i in 0..n {
        let d = &dist2[i * n..(i + 1) * n];
        let dmin = (0..n)
            .filter(|&j| j != i)
            .map(|j| d[j])
            .fold(f64::INFINITY, f64::min);
        let (mut beta, mut lo, mut hi) = (1.0, 0.0, f64::INFINITY);
        let mut entropy = 0.0;
        for _ in 0..MAX_BISECTIONS {
            // Shifted by dmin so the nearest neighbour always has weight 1.
            let mut sum = 0.0;
            let mut weighted = 0.0;
            for j in 0..n {
                row[j] = if j == i {
                    0.0
                } else {
                    (-beta * (d[j] - dmin)).exp()
                };
                sum += row[j];
                weighted += row[j] * (d[j] - dmin);
            }
            entropy = sum.ln() + beta * weighted / sum;
            for v in row.iter_mut() {
                *v /= sum;
            }
            let diff = entropy - target;
            if diff.abs() < ENTROPY_TOL {
                break;
            }
            if diff > 0.0 {
                lo = beta;
                beta = if hi.is_finite() {
                    (beta + hi) / 2.0
                } else {
                    beta * 2.0
                };
            } else {
                hi = beta;
                beta = (beta + lo) / 2.0;
            }
        }
        achieved[i] = entropy.exp();
        p[i * n..(i + 1) * n].copy_from_slice(&row);
    }
    (p, achieved)
}

/// `(P + Pᵀ) / 2n`, summing to 1.
pub fn joint_affinities(conditional: &[f64], n: usize) -> Vec<f64> {
    let mut p = vec![0.0; n * n];
    let denom = 2.0 * n as f64;
    for i in 0..n {
        for j in 0..n {
            p[i * n + j] = (conditional[i * n + j] + conditional[j * n + i]) / denom;
        }
    }
    p
}

fn kl_divergence(p: &[f64], y: &[[f64; 2]]) -> f64 {
    let n = y.len();
    let mut num = vec![0.0; n * n];
    let mut z = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let dx = y[i][0] - y[j][0];
                let dy = y[i][1] - y[j][1];
                let q = 1.0 / (1.0 + dx * dx + dy * dy);
                num[i * n + j] = q;
                z += q;
            }
        }
    }
    p.iter()
        .zip(&num)
        .filter(|(&pij, _)| pij > 0.0)
        .map(|(&pij, &q)| pij * (pij / (q / z).max(f64::MIN_POSITIVE)).ln())
        .sum()
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box–Muller; 1 − u keeps the log argument in (0, 1].
    let u: f64 = rng.gen();
    let v: f64 = rng.gen();
    (-2.0 * (1.0 - u).ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

/// `(iteration, KL divergence)` samples.
pub type KlTrace = Vec<(usize, f64)>;

/// Runs exact t-SNE on row vectors; returns 2-D coordinates and the KL trace.
pub fn tsne(points: &[Vec<f64>], cfg: &TsneConfig) -> Result<(Vec<[f64; 2]>, KlTrace)> {
    let n = points.len();
    if n < 2 || !(cfg.perplexity > 0.0) || cfg.perplexity >= (n as f64 - 1.0) / 3.0 {
        return Err(Error::Parameter(format!(
            "perplexity {} infeasible for {n} points (needs < (n − 1)/3)",
            cfg.perplexity
        )));
    }
    let dist2 = squared_distances(points);
    let (cond, _) = conditional_affinities(&dist2, n, cfg.perplexity);
    let p = joint_affinities(&cond, n);

    let mut r = rng(cfg.seed);
    let mut y: Vec<[f64; 2]> = (0..n)
        .map(|_| [1e-4 * gaussian(&mut r), 1e-4 * gaussian(&mut r)])
        .collect();
    let mut update = vec![[0.0; 2]; n];
    let mut gains = vec![[1.0f64; 2]; n];
    let mut num = vec![0.0; n * n];
    let mut trace = vec![(0, kl_divergence(&p, &y))];
    let every = cfg.kl_every.max(1);

    for it in 0..cfg.iterations {
        let exaggeration = if it < cfg.exaggeration_iters {
            cfg.early_exaggeration
        } else {
            1.0
        };
        let momentum = if it < cfg.momentum_switch {
            cfg.initial_momentum
        } else {
            cfg.final_momentum
        };

        let mut z = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let dx = y[i][0] - y[j][0];
                let dy = y[i][1] - y[j][1];
                let q = 1.0 / (1.0 + dx * dx + dy * dy);
                num[i * n + j] = q;
                num[j * n + i] = q;
                z += 2.0 * q;
            }
        }
        for i in 0..n {
            let mut grad = [0.0; 2];
            for j in 0..n {
                if i == j {
                    continue;
                }
                let q = num[i * n + j];
                let mult = (exaggeration * p[i * n + j] - q / z) * q;
                grad[0] += mult * (y[i][0] - y[j][0]);
                grad[1] += mult * (y[i][1] - y[j][1]);
            }
            for c in 0..2 {
                let g = 4.0 * grad[c];
                gains[i][c] = if (g > 0.0) != (update[i][c] > 0.0) {
                    gains[i][c] + 0.2
                } else {
                    (gains[i][c] * 0.8).max(0.01)
                };
                update[i][c] = momentum * update[i][c] - cfg.learning_rate * gains[i][c] * g;
            }
        }
        let mut mean = [0.0; 2];
        for (yi, ui) in y.iter_mut().zip(&update) {
            yi[0] += ui[0];
            yi[1] += ui[1];
            mean[0] += yi[0];
            mean[1] += yi[1];
        }
        for yi in y.iter_mut() {
            yi[0] -= mean[0] / n as f64;
            yi[1] -= mean[1] / n as f64;
        }
        let done = it + 1;
        if done % every == 0 || done == cfg.iterations {
            trace.push((done, kl_divergence(&p, &y)));
        }
    }
    Ok((y, trace))
}

fn subsample(t: &TimeSeriesTensor, cap: usize, seed: u64) -> Vec<Vec<f64>> {
    if t.windows() <= cap {
        return t.iter_windows().map(<[f64]>::to_vec).collect();
    }
    let mut idx = sample(&mut rng(seed), t.windows(), cap).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|r| t.window(r).to_vec()).collect()
}

fn bit_key(v: &[f64]) -> Vec<u64> {
    v.iter().map(|x| x.to_bits()).collect()
}

/// Embeds up to `cfg.cap` windows of each tensor into 2-D.
///
/// Each source is subsampled with the same seed, and the combined point set is
/// put in a canonical (value) order before initialization, so swapping the two
/// inputs only swaps the labels.
pub fn tsne_embed(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    cfg: &TsneConfig,
) -> Result<Embedding2D> {
    orig.check_same_step_shape(gen)?;
    if cfg.cap < 10 {
        return Err(Error::Parameter("t-SNE cap must be at least 10".into()));
    }
    let mut labeled: Vec<(Vec<f64>, Source)> = subsample(orig, cfg.cap, cfg.seed)
        .into_iter()
        .map(|w| (w, Source::Real))
        .chain(
            subsample(gen, cfg.cap, cfg.seed)
                .into_iter()
                .map(|w| (w, Source::Synthetic)),
        )
        .collect();
    labeled.sort_by_cached_key(|(w, _)| bit_key(w));
    let vectors: Vec<Vec<f64>> = labeled.iter().map(|(w, _)| w.clone()).collect();
    let (coords, kl_trace) = tsne(&vectors, cfg)?;
    Ok(Embedding2D {
        points: coords
            .into_iter()
            .zip(&labeled)
            .map(|(c, (_, label))| EmbeddedPoint {
                x: c[0],
                y: c[1],
                label: *label,
            })
            .collect(),
        kl_trace,
        config: cfg.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| {
                vec![
                    (i % 7) as f64 * 0.3,
                    (i / 7) as f64 * 0.5,
                    ((i * 13) % 5) as f64,
                ]
            })
            .collect()
    }

    #[test]
    fn rows_sum_to_one_and_perplexity_hit() {
        let pts = grid(60);
        let d = squared_distances(&pts);
        let (p, perp) = conditional_affinities(&d, 60, 10.0);
        for i in 0..60 {
            let s: f64 = p[i * 60..(i + 1) * 60].iter().sum();
            assert!((s - 1.0).abs() < 1e-9);
            assert_eq!(p[i * 60 + i], 0.0);
            assert!((perp[i] - 10.0).abs() < 1e-4, "row {i}: {}", perp[i]);
        }
        let joint = joint_affinities(&p, 60);
        assert!((joint.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn infeasible_perplexity() {
        let cfg = TsneConfig {
            perplexity: 20.0,
            ..TsneConfig::default()
        };
        assert!(matches!(tsne(&grid(60), &cfg), Err(Error::Parameter(_))));
    }

    #[test]
    fn kl_decreases() {
        let cfg = TsneConfig {
            perplexity: 5.0,
            iterations: 1000,
            ..TsneConfig::default()
        };
        let (_, trace) = tsne(&grid(40), &cfg).unwrap();
        assert_eq!(trace.first().unwrap().0, 0);
        assert_eq!(trace.last().unwrap().0, 1000);
        assert!(trace.last().unwrap().1 < trace[0].1, "{trace:?}");
    }
}
