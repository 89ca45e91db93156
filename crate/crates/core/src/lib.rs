//! Rowmotion on rooted trees.
//!
//! Exact orbit enumeration for antichain and ideal rowmotion, the cylinder
//! tiling model of orbits, the `χ`/`χ̂` statistic family with homomesy and
//! homometry checks, closed-form orbit predictors for several tree
//! families, and piecewise-linear / birational rowmotion with order search.

pub mod cli;
pub mod continuous;
pub mod error;
pub mod families;
pub mod nodeset;
pub mod poset;
pub mod rowmotion;
pub mod statistics;
pub mod tiling;
pub mod tree;

pub use error::{Error, Result};
pub use nodeset::{NodeId, NodeSet};
pub use poset::Poset;
pub use tree::{Interval, IntervalSpec, RootedTree, Shape};
