//! Saving and loading tensors: the TSGT binary format and long-format CSV.

use tsgeval::io::{decode_tensor, encode_tensor, read_long_csv, write_long_csv, HEADER_LEN};
use tsgeval::{Shape, TimeSeriesTensor};

pub fn run_example() -> tsgeval::Result<TimeSeriesTensor> {
    let t = TimeSeriesTensor::from_fn(Shape::new(3, 4, 2), |r, j, i| {
        r as f64 + j as f64 * 0.1 + i as f64 * 0.01
    })?;

    let bytes = encode_tensor(&t);
    assert_eq!(bytes.len(), HEADER_LEN + 3 * 4 * 2 * 8);
    let back = decode_tensor(&bytes)?;
    assert_eq!(back, t);

    let mut csv = Vec::new();
    write_long_csv(&t, &mut csv)?;
    println!(
        "{}",
        String::from_utf8_lossy(&csv)
            .lines()
            .take(4)
            .collect::<Vec<_>>()
            .join("\n")
    );
    let from_csv = read_long_csv(csv.as_slice())?;
    assert_eq!(from_csv, t);
    Ok(back)
}

fn main() -> tsgeval::Result<()> {
    run_example().map(drop)
}
