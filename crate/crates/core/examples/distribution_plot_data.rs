//! Aligned histogram and KDE curves of pooled original vs generated values.

use tsgeval::sine::{gen_sine, SineConfig};
use tsgeval::viz::{distribution_data, DistributionData, DistributionMode};

pub fn run_example() -> tsgeval::Result<(DistributionData, DistributionData)> {
    let orig = gen_sine(&SineConfig {
        r_count: 200,
        ..SineConfig::default()
    })?;
    let gen = orig.map(|v| (v * 1.2).clamp(-1.0, 1.0))?;
    let hist = distribution_data(&orig, &gen, 30, DistributionMode::Histogram)?;
    let kde = distribution_data(&orig, &gen, 100, DistributionMode::Kde)?;
    Ok((hist, kde))
}

fn main() -> tsgeval::Result<()> {
    let (hist, kde) = run_example()?;
    print!("{}", hist.to_csv());
    eprintln!("kde curve points: {}", kde.curves[0].points.len());
    Ok(())
}
