//! Non-retarded energy shift of a neutral atom near a perfectly conducting
//! cylindrical wire or semi-infinite halfplane.

// `!(x > a)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod halfplane;
pub mod oracle;
pub mod quadrature;
pub mod special;
pub mod types;
pub mod wire;

pub use error::{Error, Result};
pub use halfplane::HalfplaneGeometry;
pub use oracle::SeriesTruncation;
pub use quadrature::{QuadResult, SeriesPolicy};
pub use types::*;
pub use wire::WireGeometry;
