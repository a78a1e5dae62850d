//! Domain-adaptation evaluation scenarios.
//!
//! A generator is trained on a scenario's `training_set` (outside this crate)
//! and its target-domain output is scored against the target ground truth:
//!
//! | kind      | training set                       |
//! |-----------|------------------------------------|
//! | single    | source train                       |
//! | cross     | source train ++ target history     |
//! | reference | target history                     |

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{run_suite, MeasureConfig, MeasureReport};
use crate::preprocess::{shuffle_windows, split_point};
use crate::tensor::TimeSeriesTensor;

pub const DEFAULT_HIST_FRACTION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DaKind {
    Single,
    Cross,
    Reference,
}

impl DaKind {
    pub const ALL: [DaKind; 3] = [DaKind::Single, DaKind::Cross, DaKind::Reference];

    pub fn as_str(self) -> &'static str {
        match self {
            DaKind::Single => "single",
            DaKind::Cross => "cross",
            DaKind::Reference => "reference",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DomainData {
    pub source_name: String,
    pub target_name: String,
    pub source_train: TimeSeriesTensor,
    pub source_test: TimeSeriesTensor,
    /// Short history from the target domain; may be empty for single DA only.
    pub target_hist: Option<TimeSeriesTensor>,
    pub target_gt: TimeSeriesTensor,
}

impl DomainData {
    pub fn validate(&self) -> Result<()> {
        let base = &self.source_train;
        base.check_same_step_shape(&self.source_test)?;
        base.check_same_step_shape(&self.target_gt)?;
        if let Some(h) = &self.target_hist {
            base.check_same_step_shape(h)?;
            if h.windows() >= self.target_gt.windows() {
                return Err(Error::Shape(format!(
                    "target history ({} windows) must be smaller than ground truth ({})",
                    h.windows(),
                    self.target_gt.windows()
                )));
            }
        }
        Ok(())
    }

    fn require_hist(&self, kind: DaKind) -> Result<&TimeSeriesTensor> {
        self.target_hist.as_ref().ok_or_else(|| {
            Error::Degenerate(format!("{} DA needs target-domain history", kind.as_str()))
        })
    }
}

#[derive(Debug, Clone)]
pub struct DaScenario {
    pub kind: DaKind,
    pub training_set: TimeSeriesTensor,
    pub eval_gt: TimeSeriesTensor,
}

pub fn build_single(d: &DomainData) -> Result<DaScenario> {
    d.validate()?;
    Ok(DaScenario {
        kind: DaKind::Single,
        training_set: d.source_train.clone(),
        eval_gt: d.target_gt.clone(),
    })
}

/// Source train followed by target history, then shuffled with `seed`.
pub fn build_cross(d: &DomainData, seed: u64) -> Result<DaScenario> {
    d.validate()?;
    let hist = d.require_hist(DaKind::Cross)?;
    let joined = d.source_train.concat(hist)?;
    Ok(DaScenario {
        kind: DaKind::Cross,
        training_set: shuffle_windows(&joined, seed),
        eval_gt: d.target_gt.clone(),
    })
}

pub fn build_reference(d: &DomainData) -> Result<DaScenario> {
    d.validate()?;
    let hist = d.require_hist(DaKind::Reference)?;
    Ok(DaScenario {
        kind: DaKind::Reference,
        training_set: hist.clone(),
        eval_gt: d.target_gt.clone(),
    })
}

pub fn build(d: &DomainData, kind: DaKind, seed: u64) -> Result<DaScenario> {
    match kind {
        DaKind::Single => build_single(d),
        DaKind::Cross => build_cross(d, seed),
        DaKind::Reference => build_reference(d),
    }
}

/// Seeded shuffle, then the front `hist_fraction` becomes history and the rest ground truth.
pub fn split_domain(
    target_full: &TimeSeriesTensor,
    hist_fraction: f64,
    seed: u64,
) -> Result<(TimeSeriesTensor, TimeSeriesTensor)> {
    let k = split_point(target_full.windows(), hist_fraction)?;
    let shuffled = shuffle_windows(target_full, seed);
    Ok((
        shuffled.slice_windows(0, k)?,
        shuffled.slice_windows(k, shuffled.windows())?,
    ))
}

/// Scores generated target-domain data against the scenario's ground truth.
pub fn evaluate_da(
    generated: &TimeSeriesTensor,
    scenario: &DaScenario,
    cfg: &MeasureConfig,
) -> Result<MeasureReport> {
    scenario.eval_gt.check_same_step_shape(generated)?;
    run_suite(&scenario.eval_gt, generated, cfg)
}

/// Source/target domain choices shipped with the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DomainPreset {
    pub dataset: &'static str,
    pub attribute: &'static str,
    pub source: &'static str,
    pub targets: &'static [&'static str],
    /// Restriction applied to the raw data before windowing, if any.
    pub filter: Option<&'static str>,
}

pub fn presets() -> [DomainPreset; 3] {
    [
        DomainPreset {
            dataset: "HAPT",
            attribute: "user",
            source: "User 14",
            targets: &["User 0", "User 23", "User 18", "User 52", "User 20"],
            filter: Some("activity = walking"),
        },
        DomainPreset {
            dataset: "Air",
            attribute: "city",
            source: "TJ",
            targets: &["BJ", "GZ", "SZ"],
            filter: None,
        },
        DomainPreset {
            dataset: "Boiler",
            attribute: "boiler",
            source: "Boiler 1",
            targets: &["Boiler 2", "Boiler 3"],
            filter: None,
        },
    ]
}

pub fn preset(dataset: &str) -> Result<DomainPreset> {
    presets()
        .into_iter()
        .find(|p| p.dataset.eq_ignore_ascii_case(dataset))
        .ok_or_else(|| Error::UnknownDataset(format!("no domain preset for {dataset}")))
}

/// Contract handed to external generators for one DA scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioManifest {
    pub kind: DaKind,
    pub source_name: String,
    pub target_name: String,
    /// Tensor the generator should train on.
    pub training_path: PathBuf,
    /// Ground truth the output is scored against.
    pub ground_truth_path: PathBuf,
    /// Where the generator is expected to write its output.
    pub generated_path: PathBuf,
    pub hist_fraction: f64,
    pub seed: u64,
    pub training_windows: usize,
    pub ground_truth_windows: usize,
}

impl ScenarioManifest {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
