//! Runs all six deterministic measures with repeat averaging.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::distance::{ed_pairs, pair_windows};
use super::dtw::dtw_pairs;
use super::timing::Timing;
use super::{acf, histogram, moments, MeasureConfig};
use crate::error::{Error, Result};
use crate::preprocess::rng;
use crate::tensor::TimeSeriesTensor;

pub const MEASURE_NAMES: [&str; 6] = ["mdd", "acd", "sd", "kd", "ed", "dtw"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureStat {
    pub mean: f64,
    pub std: f64,
}

impl MeasureStat {
    /// Mean and sample standard deviation; exactly `(v, 0)` when all values equal `v`.
    pub fn from_samples(values: &[f64]) -> Self {
        let first = values[0];
        if values.iter().all(|&v| v == first) {
            return Self {
                mean: first,
                std: 0.0,
            };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        Self {
            mean,
            std: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub measures: BTreeMap<String, MeasureStat>,
    /// Failed measures, by name, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock: Option<Timing>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<serde_json::Value>,
}

impl MeasureReport {
    pub fn get(&self, name: &str) -> Option<MeasureStat> {
        self.measures.get(name).copied()
    }

    pub fn mean(&self, name: &str) -> Option<f64> {
        self.get(name).map(|s| s.mean)
    }

    pub fn with_wall_clock(mut self, timing: Timing) -> Self {
        self.wall_clock = Some(timing);
        self
    }

    /// Adds a measure computed elsewhere (e.g. a trained discriminator score).
    pub fn merge_external(&mut self, name: impl Into<String>, stat: MeasureStat) -> Result<()> {
        let name = name.into();
        if !stat.mean.is_finite() || !(stat.std >= 0.0) {
            return Err(Error::Parameter(format!(
                "external measure {name} needs a finite mean and non-negative std"
            )));
        }
        self.diagnostics.remove(&name);
        self.measures.insert(name, stat);
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn record(report: &mut MeasureReport, name: &str, samples: Result<Vec<f64>>) {
    match samples {
        Ok(v) => {
            report
                .measures
                .insert(name.into(), MeasureStat::from_samples(&v));
        }
        Err(e) => {
            report.diagnostics.insert(name.into(), e.to_string());
        }
    }
}

/// Computes MDD, ACD, SD, KD, ED and DTW of `gen` against `orig`.
///
/// Deterministic measures are evaluated once and reported with std 0. When
/// `nn_subsample` is set, ED and DTW are recomputed per repeat on a fresh
/// seeded subsample of generated windows. A failing measure lands in
/// `diagnostics` instead of aborting the suite.
pub fn run_suite(
    orig: &TimeSeriesTensor,
    gen: &TimeSeriesTensor,
    cfg: &MeasureConfig,
) -> Result<MeasureReport> {
    orig.check_same_step_shape(gen)?;
    cfg.validate(orig.seq_len())?;
    let repeats = cfg.repeats;
    let replicate = |v: Result<f64>| v.map(|x| vec![x; repeats]);
    let mut report = MeasureReport::default();

    record(
        &mut report,
        "mdd",
        replicate(histogram::mdd(
            orig,
            gen,
            cfg.histogram_bins,
            cfg.histogram_scale,
        )),
    );

    let max_lag = cfg.max_lag_for(orig.seq_len());
    if max_lag == 0 {
        report
            .diagnostics
            .insert("acd".into(), "window length 1 has no ACF lags".into());
    } else {
        let (_, deg_o) = acf::mean_window_acf(orig, max_lag);
        let (_, deg_g) = acf::mean_window_acf(gen, max_lag);
        if deg_o + deg_g > 0 {
            report.notes.insert(
                "acd".into(),
                format!(
                    "{deg_o} original and {deg_g} generated constant window-dimensions scored ACF 0"
                ),
            );
        }
        record(&mut report, "acd", replicate(acf::acd(orig, gen, max_lag)));
    }

    record(&mut report, "sd", replicate(moments::sd(orig, gen)));
    record(&mut report, "kd", replicate(moments::kd(orig, gen)));

    let distance_samples = || -> Result<(Vec<f64>, Vec<f64>)> {
        match cfg.nn_subsample {
            Some(cap) if cap < gen.windows() => {
                let mut eds = Vec::with_capacity(repeats);
                let mut dtws = Vec::with_capacity(repeats);
                for rep in 0..repeats {
                    let mut r = rng(cfg.seed.wrapping_add(rep as u64));
                    let mut idx = sample(&mut r, gen.windows(), cap).into_vec();
                    idx.sort_unstable();
                    let sub_gen = gen.select(&idx)?;
                    let sub_orig = match cfg.pairing {
                        super::Pairing::Index => orig.select(&idx)?,
                        super::Pairing::NearestNeighbor => orig.clone(),
                    };
                    let pairs = pair_windows(&sub_orig, &sub_gen, cfg.pairing)?;
                    eds.push(ed_pairs(&sub_orig, &sub_gen, &pairs, cfg.ed_aggregation));
                    dtws.push(dtw_pairs(&sub_orig, &sub_gen, &pairs, cfg.dtw_cost));
                }
                Ok((eds, dtws))
            }
            _ => {
                let pairs = pair_windows(orig, gen, cfg.pairing)?;
                let e = ed_pairs(orig, gen, &pairs, cfg.ed_aggregation);
                let d = dtw_pairs(orig, gen, &pairs, cfg.dtw_cost);
                Ok((vec![e; repeats], vec![d; repeats]))
            }
        }
    };
    match distance_samples() {
        Ok((eds, dtws)) => {
            record(&mut report, "ed", Ok(eds));
            record(&mut report, "dtw", Ok(dtws));
        }
        Err(e) => {
            report.diagnostics.insert("ed".into(), e.to_string());
            report.diagnostics.insert("dtw".into(), e.to_string());
        }
    }
    Ok(report)
}
