//! Scores a perturbed copy of a dataset with the full measure suite.

use tsgeval::measures::{run_suite, MeasureConfig, MeasureReport};
use tsgeval::sine::{gen_sine, SineConfig, SineFamily};

pub fn run_example() -> tsgeval::Result<MeasureReport> {
    let orig = gen_sine(&SineConfig {
        r_count: 300,
        family: SineFamily::TimeGanStyle,
        ..SineConfig::default()
    })?;
    // A crude "generator": the original, damped and slightly shifted.
    let gen = orig.map(|v| 0.9 * v + 0.03)?;

    let cfg = MeasureConfig {
        repeats: 3,
        nn_subsample: Some(100),
        ..MeasureConfig::default()
    };
    let report = run_suite(&orig, &gen, &cfg)?;
    println!("{}", report.to_json()?);
    Ok(report)
}

fn main() -> tsgeval::Result<()> {
    run_example().map(drop)
}
