//! Evaluation toolkit for synthetic time-series generation.
//!
//! The crate covers the whole offline evaluation loop around an external
//! generator: windowing and normalizing raw series ([`preprocess`]), the
//! feature- and distance-based fidelity measures ([`measures`]), plot data
//! for t-SNE and distribution plots ([`viz`]), the sine-wave robustness
//! experiment ([`sine`]), domain-adaptation scenarios ([`da`]) and
//! Friedman/Conover rank analysis ([`rank`]).
//!
//! Everything exchanges [`TimeSeriesTensor`] values of shape `(R, l, N)`,
//! persisted with the `TSGT` binary format in [`io`].

// `!(x > y)` is used on purpose so NaN falls into the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod da;
pub mod error;
pub mod io;
pub mod measures;
pub mod preprocess;
pub mod provenance;
pub mod rank;
pub mod registry;
pub mod sine;
pub mod tensor;
pub mod viz;

pub use error::{Error, Result};
pub use tensor::{RawSeries, Shape, TimeSeriesTensor};
