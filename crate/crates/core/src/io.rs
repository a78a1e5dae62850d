//! File formats: the `TSGT` binary tensor container, raw CSV series, and
//! long-format windowed CSV.
//!
//! Binary layout (all little-endian):
//!
//! ```text
//! offset  size  field
//! 0       4     magic "TSGT"
//! 4       4     format version (u32, = 1)
//! 8       8     R (u64)
//! 16      8     l (u64)
//! 24      8     N (u64)
//! 32      8·RlN values (f64, (r, j, i) row-major)
//! ```

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::tensor::{RawSeries, Shape, TimeSeriesTensor};

pub const MAGIC: [u8; 4] = *b"TSGT";
pub const FORMAT_VERSION: u32 = 1;
pub const HEADER_LEN: usize = 32;

/// Encoded size in bytes of a tensor with this shape.
pub fn encoded_len(shape: Shape) -> u64 {
    HEADER_LEN as u64 + shape.windows as u64 * shape.seq_len as u64 * shape.dims as u64 * 8
}

pub fn encode_tensor(t: &TimeSeriesTensor) -> Vec<u8> {
    let s = t.shape();
    let mut out = Vec::with_capacity(encoded_len(s) as usize);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    for v in [s.windows, s.seq_len, s.dims] {
        out.extend_from_slice(&(v as u64).to_le_bytes());
    }
    for v in t.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_tensor(bytes: &[u8]) -> Result<TimeSeriesTensor> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            return Err(Error::Format("wrong magic bytes".into()));
        }
        return Err(Error::Size {
            expected: HEADER_LEN as u64,
            found: bytes.len() as u64,
        });
    }
    if bytes[..4] != MAGIC {
        return Err(Error::Format(format!(
            "wrong magic bytes {:?}",
            String::from_utf8_lossy(&bytes[..4])
        )));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format version {version}"
        )));
    }
    let read_u64 = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let (r, l, n) = (read_u64(8), read_u64(16), read_u64(24));
    let count = r
        .checked_mul(l)
        .and_then(|v| v.checked_mul(n))
        .and_then(|v| v.checked_mul(8))
        .ok_or_else(|| Error::Format(format!("shape ({r}, {l}, {n}) overflows")))?;
    let expected = count + HEADER_LEN as u64;
    if bytes.len() as u64 != expected {
        return Err(Error::Size {
            expected,
            found: bytes.len() as u64,
        });
    }
    let data = bytes[HEADER_LEN..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let shape = Shape::new(r as usize, l as usize, n as usize);
    TimeSeriesTensor::new(data, shape)
}

pub fn save_tensor(t: &TimeSeriesTensor, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut f = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    f.write_all(&encode_tensor(t))
        .map_err(|e| Error::io(path, e))
}

pub fn load_tensor(path: impl AsRef<Path>) -> Result<TimeSeriesTensor> {
    let path = path.as_ref();
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    decode_tensor(&bytes)
}

fn csv_reader<R: Read>(input: R, has_header: bool) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(has_header)
        .trim(csv::Trim::All)
        .from_reader(input)
}

fn parse_cell(cell: &str, row: usize, column: usize) -> Result<f64> {
    let v: f64 = cell.parse().map_err(|_| Error::Parse {
        row,
        column,
        message: format!("cannot parse {cell:?} as a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            row,
            column,
            message: format!("non-finite value {cell:?}"),
        });
    }
    Ok(v)
}

fn map_csv_error(e: csv::Error) -> Error {
    match e.kind() {
        csv::ErrorKind::UnequalLengths {
            pos,
            expected_len,
            len,
        } => Error::Structure(format!(
            "ragged rows: line {} has {len} fields, expected {expected_len}",
            pos.as_ref().map_or(0, |p| p.line())
        )),
        _ => Error::Structure(e.to_string()),
    }
}

/// Reads a `(L, N)` series from CSV text. Rows and columns are 1-based in errors;
/// the header line, when present, counts as row 1.
pub fn read_raw_csv<R: Read>(input: R, has_header: bool) -> Result<RawSeries> {
    let mut rdr = csv_reader(input, has_header);
    let columns = if has_header {
        Some(
            rdr.headers()
                .map_err(map_csv_error)?
                .iter()
                .map(str::to_owned)
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    let first_row = if has_header { 2 } else { 1 };
    let mut values = Vec::new();
    let mut dims = None;
    let mut len = 0;
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(map_csv_error)?;
        let row = first_row + k;
        let width = *dims.get_or_insert(rec.len());
        if rec.len() != width {
            return Err(Error::Structure(format!(
                "ragged rows: row {row} has {} fields, expected {width}",
                rec.len()
            )));
        }
        for (c, cell) in rec.iter().enumerate() {
            values.push(parse_cell(cell, row, c + 1)?);
        }
        len += 1;
    }
    let dims = dims.ok_or_else(|| Error::Structure("no data rows".into()))?;
    let raw = RawSeries::new(values, len, dims)?;
    match columns {
        Some(c) => raw.with_columns(c),
        None => Ok(raw),
    }
}

pub fn load_raw_csv(path: impl AsRef<Path>, has_header: bool) -> Result<RawSeries> {
    let path = path.as_ref();
    let f = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_raw_csv(f, has_header)
}

/// Reads windowed data in long format: `window_id,time_step,dim_0,…,dim_{N-1}`.
///
/// Window ids must cover `0..R` and steps `0..l`, each (window, step) pair once,
/// in any row order.
pub fn read_long_csv<R: Read>(input: R) -> Result<TimeSeriesTensor> {
    let mut rdr = csv_reader(input, true);
    let header = rdr.headers().map_err(map_csv_error)?.clone();
    if header.len() < 3 || &header[0] != "window_id" || &header[1] != "time_step" {
        return Err(Error::Structure(
            "long-format header must start with window_id,time_step and have at least one dim column"
                .into(),
        ));
    }
    let dims = header.len() - 2;
    let mut rows: Vec<(usize, usize, Vec<f64>)> = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(map_csv_error)?;
        let row = k + 2;
        let idx = |c: usize| -> Result<usize> {
            rec[c].parse().map_err(|_| Error::Parse {
                row,
                column: c + 1,
                message: format!("expected a non-negative integer, got {:?}", &rec[c]),
            })
        };
        let (w, t) = (idx(0)?, idx(1)?);
        let vals = (2..rec.len())
            .map(|c| parse_cell(&rec[c], row, c + 1))
            .collect::<Result<Vec<_>>>()?;
        rows.push((w, t, vals));
    }
    if rows.is_empty() {
        return Err(Error::Structure("no data rows".into()));
    }
    let windows = rows.iter().map(|r| r.0).max().unwrap() + 1;
    let seq_len = rows.iter().map(|r| r.1).max().unwrap() + 1;
    if rows.len() != windows * seq_len {
        return Err(Error::Structure(format!(
            "{} rows cannot fill a {windows}×{seq_len} window grid",
            rows.len()
        )));
    }
    let mut data = vec![0.0; windows * seq_len * dims];
    let mut seen = vec![false; windows * seq_len];
    for (w, t, vals) in rows {
        let cell = w * seq_len + t;
        if std::mem::replace(&mut seen[cell], true) {
            return Err(Error::Structure(format!(
                "duplicate row for window {w}, step {t}"
            )));
        }
        data[cell * dims..(cell + 1) * dims].copy_from_slice(&vals);
    }
    TimeSeriesTensor::new(data, Shape::new(windows, seq_len, dims))
}

pub fn write_long_csv<W: Write>(t: &TimeSeriesTensor, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["window_id".to_string(), "time_step".to_string()];
    header.extend((0..t.dims()).map(|i| format!("dim_{i}")));
    w.write_record(&header).map_err(map_csv_error)?;
    for r in 0..t.windows() {
        for j in 0..t.seq_len() {
            let mut rec = vec![r.to_string(), j.to_string()];
            rec.extend((0..t.dims()).map(|i| t.get(r, j, i).to_string()));
            w.write_record(&rec).map_err(map_csv_error)?;
        }
    }
    w.flush().map_err(|e| Error::Structure(e.to_string()))
}

/// Loads a tensor from either a `TSGT` file or, for `.csv` paths, long-format CSV.
pub fn load_tensor_any(path: impl AsRef<Path>) -> Result<TimeSeriesTensor> {
    let path = path.as_ref();
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    {
        let f = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        read_long_csv(f)
    } else {
        load_tensor(path)
    }
}
