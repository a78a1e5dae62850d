//! The built-in dataset registry: window counts, lengths and dimensions.

use tsgeval::registry::{lookup, registry, DatasetMeta};

pub fn run_example() -> tsgeval::Result<&'static DatasetMeta> {
    for d in registry() {
        println!(
            "{:<12} R={:>6} l={:>3} N={:>2} raw length={:>6} ({})",
            d.name,
            d.r_count,
            d.seq_len,
            d.dim_count,
            d.raw_len(),
            d.domain
        );
    }
    lookup("energy long")
}

fn main() -> tsgeval::Result<()> {
    run_example().map(drop)
}
