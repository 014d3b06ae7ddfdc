//! Built-in presentations and closed formulas used as oracles.

pub mod formulas;
pub mod presentations;

pub use presentations::{build, build_presentation};
