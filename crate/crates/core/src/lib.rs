//! Matching partition functions of regular graphs, computed exactly and
//! compared against `K_{d+1}` with certified error bounds.

pub mod error;
pub mod graph;
pub mod matchpoly;
pub mod minimax;
pub mod necklace;
pub mod numeric;
pub mod polytope;
pub mod series;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;
