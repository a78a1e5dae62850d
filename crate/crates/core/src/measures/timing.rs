//! Wall-clock capture for training-time reporting.

use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub label: String,
    pub seconds: f64,
}

/// Runs `action` and measures its monotonic wall-clock duration.
pub fn timed<A>(label: impl Into<String>, action: impl FnOnce() -> A) -> (A, Timing) {
    let start = Instant::now();
    let out = action();
    let seconds = start.elapsed().as_secs_f64();
    (
        out,
        Timing {
            label: label.into(),
            seconds,
        },
    )
}
