//! Exact and certified numeric building blocks.

pub mod dyadic;
pub mod interval;
pub mod poly;
pub mod sturm;

pub use dyadic::{Dyadic, Real, Round};
pub use interval::Interval;
pub use poly::IntPoly;
