//! Library surface of the scenario runner; the `curvlab` binary is a thin
//! wrapper around these modules.

pub mod emit;
pub mod runner;
pub mod scenario;
