//! Raw multivariate series → shuffled, split, min-max normalized windows.
//!
//! The window length is picked automatically from the autocorrelation peak.

use tsgeval::preprocess::{estimate_period, run_pipeline, PreprocessConfig, PreprocessOutput};
use tsgeval::RawSeries;

fn two_tone(len: usize) -> tsgeval::Result<RawSeries> {
    let mut values = Vec::with_capacity(len * 2);
    for t in 0..len {
        let phase = t as f64 * std::f64::consts::TAU / 20.0;
        values.push(phase.sin());
        values.push(10.0 + 3.0 * phase.cos());
    }
    RawSeries::new(values, len, 2)
}

pub fn run_example() -> tsgeval::Result<PreprocessOutput> {
    let raw = two_tone(400)?;
    let period = estimate_period(&raw, 100)?;
    println!("estimated period: {period:?}");

    let out = run_pipeline(&raw, &PreprocessConfig::default())?;
    println!(
        "l = {}, train {} windows, test {} windows",
        out.seq_len,
        out.train.windows(),
        out.test.windows()
    );
    if let Some(scaler) = &out.scaler {
        print!("{}", scaler.to_text());
    }
    Ok(out)
}

fn main() -> tsgeval::Result<()> {
    run_example().map(drop)
}
