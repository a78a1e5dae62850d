//! Plot-ready data for t-SNE scatter plots and value-distribution plots.

pub mod distribution;
pub mod tsne;

use serde::{Deserialize, Serialize};

pub use distribution::{distribution_data, DistributionData, DistributionMode};
pub use tsne::{tsne_embed, Embedding2D, TsneConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Real,
    Synthetic,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Real => "real",
            Source::Synthetic => "synthetic",
        }
    }
}
