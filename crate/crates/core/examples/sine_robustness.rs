//! Sine-wave robustness run: a dataset scored against itself and against an
//! independently drawn dataset of the same shape.
//!
//! ```text
//! cargo run --release --example sine_robustness -- [l] [calibrated|literal] [windows]
//! ```

use std::time::Instant;

use tsgeval::sine::{run_robustness, RobustnessProfile, RobustnessTable};

pub fn robustness(
    seq_len: usize,
    profile: RobustnessProfile,
    windows: usize,
) -> tsgeval::Result<RobustnessTable> {
    let mut sine = profile.sine(seq_len, 0);
    sine.r_count = windows;
    run_robustness(&sine, &profile.measures())
}

pub fn run_example() -> tsgeval::Result<RobustnessTable> {
    robustness(24, RobustnessProfile::Calibrated, 500)
}

fn main() -> tsgeval::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let seq_len = args
        .first()
        .map_or(Ok(24), |s| s.parse())
        .expect("l must be an integer");
    let profile = match args.get(1).map(String::as_str) {
        None | Some("calibrated") => RobustnessProfile::Calibrated,
        Some("literal") => RobustnessProfile::Literal,
        Some(other) => panic!("unknown profile {other}"),
    };
    let windows = args
        .get(2)
        .map_or(Ok(10_000), |s| s.parse())
        .expect("windows must be an integer");

    let start = Instant::now();
    let table = robustness(seq_len, profile, windows)?;
    print!("{}", table.to_csv());
    eprintln!(
        "profile={profile:?} pairing={:?} elapsed={:.1}s",
        table.measures.pairing,
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
