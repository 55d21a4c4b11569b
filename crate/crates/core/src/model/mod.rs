//! Instances, routes and columns.

mod column;
mod grid;
pub(crate) mod instance;
mod route;

pub use column::{make_column, Column, ColumnKey, SpaceEdge};
pub(crate) use column::column_unchecked;
pub use grid::{Cell, Grid, DIRECTIONS};
pub use instance::{validate_instance, ExtantRobot, Instance, Item, Time, TimeWindow};
pub use route::{check_route, route_cost, Pickup, Route, SpaceTime};
