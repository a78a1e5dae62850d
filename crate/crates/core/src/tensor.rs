//! The `(R, l, N)` time-series tensor and the raw `(L, N)` series it is cut from.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shape of a windowed tensor: `windows` windows of `seq_len` steps over `dims` channels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub windows: usize,
    pub seq_len: usize,
    pub dims: usize,
}

impl Shape {
    pub fn new(windows: usize, seq_len: usize, dims: usize) -> Self {
        Self {
            windows,
            seq_len,
            dims,
        }
    }

    /// Number of values in one window (`l · N`).
    pub fn window_len(&self) -> usize {
        self.seq_len * self.dims
    }

    /// Total number of values, or `None` on overflow.
    pub fn checked_len(&self) -> Option<usize> {
        self.windows
            .checked_mul(self.seq_len)
            .and_then(|v| v.checked_mul(self.dims))
    }
}

impl std::fmt::Display for Shape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.windows, self.seq_len, self.dims)
    }
}

/// Rank-3 array of finite `f64` values stored row-major over (window, step, dimension).
///
/// Immutable once built; every constructor validates the shape product and finiteness.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesTensor {
    data: Vec<f64>,
    shape: Shape,
}

impl TimeSeriesTensor {
    pub fn new(data: Vec<f64>, shape: Shape) -> Result<Self> {
        if shape.windows == 0 || shape.seq_len == 0 || shape.dims == 0 {
            return Err(Error::Shape(format!(
                "every axis must be positive, got {shape}"
            )));
        }
        let expected = shape
            .checked_len()
            .ok_or_else(|| Error::Shape(format!("shape {shape} overflows")))?;
        if expected != data.len() {
            return Err(Error::Shape(format!(
                "shape {shape} needs {expected} values, payload has {}",
                data.len()
            )));
        }
        if let Some(idx) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(idx));
        }
        Ok(Self { data, shape })
    }

    /// Builds a tensor from `windows × seq_len × dims` values produced by `f(r, j, i)`.
    pub fn from_fn(shape: Shape, mut f: impl FnMut(usize, usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(shape.checked_len().unwrap_or(0));
        for r in 0..shape.windows {
            for j in 0..shape.seq_len {
                for i in 0..shape.dims {
                    data.push(f(r, j, i));
                }
            }
        }
        Self::new(data, shape)
    }

    /// Stacks equally sized windows (each `seq_len · dims` long).
    pub fn from_windows<'a, I>(windows: I, seq_len: usize, dims: usize) -> Result<Self>
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut data = Vec::new();
        let mut count = 0;
        for w in windows {
            if w.len() != seq_len * dims {
                return Err(Error::Shape(format!(
                    "window {count} has {} values, expected {}",
                    w.len(),
                    seq_len * dims
                )));
            }
            data.extend_from_slice(w);
            count += 1;
        }
        Self::new(data, Shape::new(count, seq_len, dims))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn windows(&self) -> usize {
        self.shape.windows
    }

    pub fn seq_len(&self) -> usize {
        self.shape.seq_len
    }

    pub fn dims(&self) -> usize {
        self.shape.dims
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, j: usize, i: usize) -> f64 {
        let s = self.shape;
        self.data[(r * s.seq_len + j) * s.dims + i]
    }

    /// The `l · N` values of window `r`, step-major.
    #[inline]
    pub fn window(&self, r: usize) -> &[f64] {
        let n = self.shape.window_len();
        &self.data[r * n..(r + 1) * n]
    }

    pub fn iter_windows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.shape.window_len())
    }

    /// New tensor holding the windows at `indices`, in that order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let mut data = Vec::with_capacity(indices.len() * self.shape.window_len());
        for &r in indices {
            if r >= self.shape.windows {
                return Err(Error::Shape(format!(
                    "window index {r} out of range for {} windows",
                    self.shape.windows
                )));
            }
            data.extend_from_slice(self.window(r));
        }
        Self::new(
            data,
            Shape::new(indices.len(), self.shape.seq_len, self.shape.dims),
        )
    }

    /// Windows `[start, end)`.
    pub fn slice_windows(&self, start: usize, end: usize) -> Result<Self> {
        if start > end || end > self.shape.windows {
            return Err(Error::Shape(format!(
                "window range {start}..{end} invalid for {} windows",
                self.shape.windows
            )));
        }
        let n = self.shape.window_len();
        Self::new(
            self.data[start * n..end * n].to_vec(),
            Shape::new(end - start, self.shape.seq_len, self.shape.dims),
        )
    }

    /// Appends the windows of `other` after those of `self`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.check_same_step_shape(other)?;
        let mut data = Vec::with_capacity(self.data.len() + other.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&other.data);
        Self::new(
            data,
            Shape::new(
                self.shape.windows + other.shape.windows,
                self.shape.seq_len,
                self.shape.dims,
            ),
        )
    }

    /// Elementwise map, keeping the shape.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.data.iter().map(|&v| f(v)).collect(), self.shape)
    }

    /// All values of dimension `i`, over every window and step.
    pub fn pooled_dim(&self, i: usize) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().skip(i).step_by(self.shape.dims).copied()
    }

    /// Values at step `j`, dimension `i`, one per window.
    pub fn cross_section(&self, j: usize, i: usize) -> impl Iterator<Item = f64> + '_ {
        let off = j * self.shape.dims + i;
        self.iter_windows().map(move |w| w[off])
    }

    /// Errors unless `other` has the same `(l, N)`.
    pub fn check_same_step_shape(&self, other: &Self) -> Result<()> {
        if self.shape.seq_len != other.shape.seq_len || self.shape.dims != other.shape.dims {
            return Err(Error::Shape(format!(
                "(l, N) mismatch: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.shape.dims != other.shape.dims {
            return Err(Error::Shape(format!(
                "dimension mismatch: {} vs {}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }
}

/// A long multivariate series, `L` time points by `N` dimensions, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSeries {
    values: Vec<f64>,
    len: usize,
    dims: usize,
    columns: Option<Vec<String>>,
}

impl RawSeries {
    pub fn new(values: Vec<f64>, len: usize, dims: usize) -> Result<Self> {
        if len == 0 || dims == 0 {
            return Err(Error::Shape(format!(
                "raw series needs L ≥ 1 and N ≥ 1, got ({len}, {dims})"
            )));
        }
        if values.len() != len * dims {
            return Err(Error::Shape(format!(
                "raw series ({len}, {dims}) needs {} values, got {}",
                len * dims,
                values.len()
            )));
        }
        if let Some(idx) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(idx));
        }
        Ok(Self {
            values,
            len,
            dims,
            columns: None,
        })
    }

    /// Single-dimension series.
    pub fn univariate(values: Vec<f64>) -> Result<Self> {
        let len = values.len();
        Self::new(values, len, 1)
    }

    pub fn with_columns(mut self, columns: Vec<String>) -> Result<Self> {
        if columns.len() != self.dims {
            return Err(Error::Structure(format!(
                "{} column names for {} dimensions",
                columns.len(),
                self.dims
            )));
        }
        self.columns = Some(columns);
        Ok(self)
    }

    /// Number of time points `L`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn columns(&self) -> Option<&[String]> {
        self.columns.as_deref()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn get(&self, t: usize, i: usize) -> f64 {
        self.values[t * self.dims + i]
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.dims..(t + 1) * self.dims]
    }

    pub fn column(&self, i: usize) -> Vec<f64> {
        self.values
            .iter()
            .skip(i)
            .step_by(self.dims)
            .copied()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_payload_shape_disagreement() {
        let err = TimeSeriesTensor::new(vec![0.0; 5], Shape::new(1, 2, 3)).unwrap_err();
        assert!(matches!(err, Error::Shape(_)));
    }

    #[test]
    fn rejects_zero_axes_and_nan() {
        assert!(TimeSeriesTensor::new(vec![], Shape::new(0, 2, 3)).is_err());
        let err = TimeSeriesTensor::new(vec![0.0, f64::NAN], Shape::new(1, 2, 1)).unwrap_err();
        assert!(matches!(err, Error::NonFinite(1)));
    }

    #[test]
    fn indexing_is_window_step_dim_row_major() {
        let t =
            TimeSeriesTensor::from_fn(Shape::new(2, 3, 2), |r, j, i| (100 * r + 10 * j + i) as f64)
                .unwrap();
        assert_eq!(t.get(1, 2, 1), 121.0);
        assert_eq!(t.window(1)[0], 100.0);
        assert_eq!(t.as_slice()[3], 11.0);
        assert_eq!(
            t.pooled_dim(1).collect::<Vec<_>>(),
            vec![1., 11., 21., 101., 111., 121.]
        );
        assert_eq!(t.cross_section(2, 0).collect::<Vec<_>>(), vec![20., 120.]);
    }

    #[test]
    fn concat_and_select() {
        let a =
            TimeSeriesTensor::from_fn(Shape::new(2, 2, 1), |r, j, _| (r * 2 + j) as f64).unwrap();
        let b = a.select(&[1, 0, 1]).unwrap();
        assert_eq!(b.windows(), 3);
        assert_eq!(b.window(0), a.window(1));
        let c = a.concat(&b).unwrap();
        assert_eq!(c.windows(), 5);
        assert_eq!(c.window(4), a.window(1));
        assert!(a.select(&[2]).is_err());
    }
}
