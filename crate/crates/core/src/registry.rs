//! Metadata for the ten public benchmark datasets after windowing.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DatasetMeta {
    pub name: &'static str,
    /// Window count `R` after stride-1 segmentation.
    pub r_count: usize,
    /// Window length `l`.
    pub seq_len: usize,
    /// Dimension count `N`.
    pub dim_count: usize,
    pub domain: &'static str,
}

const fn meta(
    name: &'static str,
    r_count: usize,
    seq_len: usize,
    dim_count: usize,
    domain: &'static str,
) -> DatasetMeta {
    DatasetMeta {
        name,
        r_count,
        seq_len,
        dim_count,
        domain,
    }
}

static REGISTRY: [DatasetMeta; 10] = [
    meta("DLG", 246, 14, 20, "Traffic"),
    meta("Stock", 3294, 24, 6, "Financial"),
    meta("Stock Long", 3204, 125, 6, "Financial"),
    meta("Exchange", 6715, 125, 8, "Financial"),
    meta("Energy", 17739, 24, 28, "Appliances"),
    meta("Energy Long", 17649, 125, 28, "Appliances"),
    meta("EEG", 13366, 128, 14, "Medical"),
    meta("HAPT", 1514, 128, 6, "Medical"),
    meta("Air", 7731, 168, 6, "Sensor"),
    meta("Boiler", 80935, 192, 11, "Industrial"),
];

pub fn registry() -> &'static [DatasetMeta] {
    &REGISTRY
}

/// Case-insensitive lookup by name.
pub fn lookup(name: &str) -> Result<&'static DatasetMeta> {
    REGISTRY
        .iter()
        .find(|m| m.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownDataset(name.to_string()))
}

impl DatasetMeta {
    /// Raw series length `L = R + l − 1` implied by stride-1 windowing.
    pub fn raw_len(&self) -> usize {
        self.r_count + self.seq_len - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let e = lookup("Energy").unwrap();
        assert_eq!(
            (e.r_count, e.seq_len, e.dim_count, e.domain),
            (17739, 24, 28, "Appliances")
        );
        let b = lookup("boiler").unwrap();
        assert_eq!(
            (b.r_count, b.seq_len, b.dim_count, b.domain),
            (80935, 192, 11, "Industrial")
        );
        assert!(matches!(
            lookup("Nonexistent"),
            Err(Error::UnknownDataset(_))
        ));
    }

    #[test]
    fn stock_raw_length() {
        assert_eq!(lookup("Stock").unwrap().raw_len(), 3317);
    }
}
