//! Space-time graph, dual-weighted pricing graph and coarse distance tables.

mod augmented;
mod duals;
mod sweep;
mod table;

pub use augmented::{build_augmented, AugArc, AugNode, AugmentedGraph};
pub use duals::DualSolution;
pub use sweep::{earliest_arrival_paths, ArcWeights, LayeredPaths, PathTree};
pub use table::{CoarseDistanceTable, Origin, PickupIndex, Terminal};
