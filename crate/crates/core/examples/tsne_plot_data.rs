//! t-SNE scatter data for original vs generated windows.

use tsgeval::sine::{gen_sine, SineConfig, SineFamily};
use tsgeval::viz::{tsne_embed, Embedding2D, TsneConfig};

pub fn run_example() -> tsgeval::Result<Embedding2D> {
    let sine = SineConfig {
        r_count: 150,
        family: SineFamily::TimeGanStyle,
        ..SineConfig::default()
    };
    let orig = gen_sine(&sine)?;
    let gen = gen_sine(&SineConfig { seed: 1, ..sine })?;
    let emb = tsne_embed(
        &orig,
        &gen,
        &TsneConfig {
            perplexity: 20.0,
            iterations: 500,
            ..TsneConfig::default()
        },
    )?;
    let (first, last) = (emb.kl_trace[0].1, emb.kl_trace.last().unwrap().1);
    println!("{} points, KL {first:.3} -> {last:.3}", emb.points.len());
    Ok(emb)
}

fn main() -> tsgeval::Result<()> {
    let emb = run_example()?;
    print!("{}", emb.to_csv());
    Ok(())
}
