//! Column generation for routing a fleet of warehouse robots on a grid.
//!
//! Robots leave a single launcher cell, collect time-windowed items and come
//! back before the horizon ends. The problem is a set-packing ILP over
//! space-time routes; its LP relaxation is solved by column generation where
//! pricing is a resource-constrained shortest path on a time-aggregated graph
//! that is refined until the cheapest path has a consistent timeline.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. The only thing `std` adds is wall-clock timing in the engine.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod clock;
pub mod coarsen;
pub mod engine;
pub mod error;
pub mod master;
pub mod model;
pub mod oracle;
pub mod pricing;
pub mod timegraph;

pub use engine::{compute_gap, solve, solve_no_collision, solve_with_master, CollisionMode, Solution, SolverConfig};
pub use error::{Error, Result};
pub use model::{
    make_column, route_cost, validate_instance, Cell, Column, ExtantRobot, Instance, Item, Pickup,
    Route, SpaceEdge, SpaceTime, Time, TimeWindow,
};
pub use timegraph::DualSolution;
