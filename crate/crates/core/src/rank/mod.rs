//! Rank analysis over a methods × datasets score table: average ranks,
//! Friedman test, Conover post-hoc comparisons and critical-difference tiers.
//!
//! Lower scores are better; rank 1 is best.

pub mod special;

use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ALPHA: f64 = 0.05;

/// `scores[m][d]` is method `m`'s score on dataset `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreTable {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    pub scores: Vec<Vec<f64>>,
}

impl ScoreTable {
    pub fn new(methods: Vec<String>, datasets: Vec<String>, scores: Vec<Vec<f64>>) -> Result<Self> {
        let t = Self {
            methods,
            datasets,
            scores,
        };
        t.validate()?;
        Ok(t)
    }

    /// Unnamed table (`M0…`, `D0…`) from rows of scores.
    pub fn from_rows(scores: Vec<Vec<f64>>) -> Result<Self> {
        let k = scores.len();
        let n = scores.first().map_or(0, Vec::len);
        Self::new(
            (0..k).map(|m| format!("M{m}")).collect(),
            (0..n).map(|d| format!("D{d}")).collect(),
            scores,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let (k, n) = (self.methods.len(), self.datasets.len());
        if k < 2 || n < 2 {
            return Err(Error::Shape(format!(
                "rank analysis needs at least 2 methods and 2 datasets, got {k} × {n}"
            )));
        }
        if self.scores.len() != k || self.scores.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("score matrix is not {k} × {n}")));
        }
        if self.scores.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::Structure(
                "score table has missing or non-finite cells".into(),
            ));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.methods.len()
    }

    pub fn n(&self) -> usize {
        self.datasets.len()
    }

    /// CSV with a header `method,<dataset>…` and one row per method.
    pub fn read_csv<R: Read>(input: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(input);
        let header = rdr
            .headers()
            .map_err(|e| Error::Structure(e.to_string()))?
            .clone();
        let datasets: Vec<String> = header.iter().skip(1).map(str::to_owned).collect();
        let mut methods = Vec::new();
        let mut scores = Vec::new();
        for (k, rec) in rdr.records().enumerate() {
            let rec = rec.map_err(|e| Error::Structure(e.to_string()))?;
            let row = k + 2;
            methods.push(rec.get(0).unwrap_or_default().to_owned());
            let vals = rec
                .iter()
                .enumerate()
                .skip(1)
                .map(|(c, cell)| {
                    cell.parse::<f64>().map_err(|_| Error::Parse {
                        row,
                        column: c + 1,
                        message: format!("cannot parse {cell:?} as a score"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            scores.push(vals);
        }
        Self::new(methods, datasets, scores)
    }
}

/// Ranks of `values` ascending (1-based), ties sharing the average position.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &idx in &order[start..end] {
            ranks[idx] = avg;
        }
        start = end;
    }
    ranks
}

/// `ranks[m][d]`: rank of method `m` within dataset `d`.
pub fn rank_columns(t: &ScoreTable) -> Vec<Vec<f64>> {
    let (k, n) = (t.k(), t.n());
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|d| average_ranks(&t.scores.iter().map(|row| row[d]).collect::<Vec<_>>()))
        .collect();
    (0..k)
        .map(|m| cols.iter().map(|c| c[m]).collect())
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    pub statistic: f64,
    pub p_value: f64,
    pub df: usize,
}

fn tie_term(col: &[f64]) -> f64 {
    let mut sorted = col.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut total = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        total += t * t * t - t;
        i = j;
    }
    total
}

/// Friedman chi-square statistic with tie correction and its `χ²(k−1)` p-value.
pub fn friedman(t: &ScoreTable) -> Result<FriedmanResult> {
    t.validate()?;
    let (k, n) = (t.k() as f64, t.n() as f64);
    let ranks = rank_columns(t);
    let center = (k + 1.0) / 2.0;
    let spread: f64 = ranks
        .iter()
        .map(|row| (row.iter().sum::<f64>() / n - center).powi(2))
        .sum();
    let raw = 12.0 * n / (k * (k + 1.0)) * spread;
    let ties: f64 = (0..t.n())
        .map(|d| tie_term(&(0..t.k()).map(|m| ranks[m][d]).collect::<Vec<_>>()))
        .sum();
    let correction = 1.0 - ties / (n * k * (k * k - 1.0));
    let df = t.k() - 1;
    if correction <= 1e-12 || raw == 0.0 {
        return Ok(FriedmanResult {
            statistic: 0.0,
            p_value: 1.0,
            df,
        });
    }
    let statistic = raw / correction;
    Ok(FriedmanResult {
        statistic,
        p_value: special::chi2_sf(statistic, df as f64),
        df,
    })
}

/// Conover's pairwise comparison p-values after a Friedman test (two-sided,
/// unadjusted, `(n−1)(k−1)` degrees of freedom). Symmetric, unit diagonal.
pub fn conover_posthoc(t: &ScoreTable) -> Result<Vec<Vec<f64>>> {
    t.validate()?;
    let (k, n) = (t.k(), t.n());
    let ranks = rank_columns(t);
    let sums: Vec<f64> = ranks.iter().map(|row| row.iter().sum()).collect();
    let a1: f64 = ranks.iter().flatten().map(|r| r * r).sum();
    let sum_sq: f64 = sums.iter().map(|r| r * r).sum();
    let df = ((n - 1) * (k - 1)) as f64;
    let var = (2.0 * (n as f64 * a1 - sum_sq) / df).max(0.0);
    let scale = var.sqrt();
    let mut p = vec![vec![1.0; k]; k];
    for i in 0..k {
        for j in i + 1..k {
            let gap = (sums[i] - sums[j]).abs();
            let pv = if gap == 0.0 {
                1.0
            } else if scale == 0.0 {
                // Perfectly consistent rankings: any rank-sum gap is decisive.
                0.0
            } else {
                special::t_two_sided(gap / scale, df)
            };
            p[i][j] = pv;
            p[j][i] = pv;
        }
    }
    Ok(p)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankAnalysis {
    pub methods: Vec<String>,
    pub avg_ranks: Vec<f64>,
    pub friedman: FriedmanResult,
    pub conover_p: Vec<Vec<f64>>,
    pub alpha: f64,
    /// Method indices grouped into tiers, best first.
    pub tiers: Vec<Vec<usize>>,
    /// Maximal runs (in average-rank order) of mutually non-significant methods,
    /// the bars of a critical-difference diagram.
    pub cliques: Vec<Vec<usize>>,
}

pub fn analyze(t: &ScoreTable, alpha: f64) -> Result<RankAnalysis> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Parameter(format!(
            "alpha must be in (0, 1), got {alpha}"
        )));
    }
    let ranks = rank_columns(t);
    let n = t.n() as f64;
    let avg_ranks: Vec<f64> = ranks.iter().map(|r| r.iter().sum::<f64>() / n).collect();
    let friedman = friedman(t)?;
    let conover_p = conover_posthoc(t)?;
    let (tiers, cliques) = critical_difference_tiers(&avg_ranks, &conover_p, alpha);
    Ok(RankAnalysis {
        methods: t.methods.clone(),
        avg_ranks,
        friedman,
        conover_p,
        alpha,
        tiers,
        cliques,
    })
}

/// Methods sorted by average rank, ties by index.
fn rank_order(avg_ranks: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..avg_ranks.len()).collect();
    order.sort_by(|&a, &b| avg_ranks[a].total_cmp(&avg_ranks[b]).then(a.cmp(&b)));
    order
}

/// Greedy tiers: walk methods by average rank and keep adding to the current
/// tier while the newcomer is not significantly different (`p ≥ alpha`) from
/// every member. Also returns the maximal non-significance cliques.
pub fn critical_difference_tiers(
    avg_ranks: &[f64],
    p: &[Vec<f64>],
    alpha: f64,
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let order = rank_order(avg_ranks);
    let mut tiers: Vec<Vec<usize>> = Vec::new();
    for &m in &order {
        match tiers.last_mut() {
            Some(tier) if tier.iter().all(|&o| p[m][o] >= alpha) => tier.push(m),
            _ => tiers.push(vec![m]),
        }
    }

    let mut cliques: Vec<Vec<usize>> = Vec::new();
    let mut last_end = 0;
    for start in 0..order.len() {
        let mut end = start + 1;
        while end < order.len() && order[start..end].iter().all(|&o| p[order[end]][o] >= alpha) {
            end += 1;
        }
        if end - start >= 2 && end > last_end {
            cliques.push(order[start..end].to_vec());
            last_end = end;
        }
    }
    (tiers, cliques)
}

impl RankAnalysis {
    pub fn tier_of(&self, method: usize) -> usize {
        self.tiers
            .iter()
            .position(|t| t.contains(&method))
            .expect("every method belongs to a tier")
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// `method,avg_rank,tier` rows in average-rank order; tiers are 1-based.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("method,avg_rank,tier\n");
        for m in rank_order(&self.avg_ranks) {
            let _ = writeln!(
                s,
                "{},{:?},{}",
                self.methods[m],
                self.avg_ranks[m],
                self.tier_of(m) + 1
            );
        }
        s
    }
}
