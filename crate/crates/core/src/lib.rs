//! Exact and statistical element statistics for small finite classical groups.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod action;
pub mod counts;
pub mod enclosure;
pub mod error;
pub mod field;
pub mod forms;
pub mod group;
pub mod limits;
pub mod matrix;
pub mod membership;
pub mod poly;
pub mod ring;
pub mod sampling;
pub mod series;
pub mod stats;

pub use error::{Error, Result};
pub use enclosure::Enclosure;
pub use field::{Field, FieldElement};
pub use poly::DensePoly;
pub use ring::{CyclotomicField, Rationals, Ring};
pub use series::{RationalSeries, TruncatedSeries};
