//! Numeric building blocks: error-free transformations, double-double
//! arithmetic, outward-rounded intervals, and the [`Real`] abstraction that
//! lets bound formulas be evaluated in any of them.

pub mod dd;
pub mod eft;
pub mod interval;
pub mod real;

pub use dd::Dd;
pub use eft::CompensatedSum;
pub use interval::{DdInterval, Interval};
pub use real::Real;
