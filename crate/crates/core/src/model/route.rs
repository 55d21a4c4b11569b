use alloc::format;
use alloc::vec::Vec;

use super::grid::{Cell, Grid};
use super::instance::{Instance, Time};
use crate::error::{Error, Result};

/// A (cell, time) pair. Serialized as `[x, y, t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[i32; 3]", into = "[i32; 3]"))]
pub struct SpaceTime {
    pub cell: Cell,
    pub time: Time,
}

impl SpaceTime {
    pub const fn new(cell: Cell, time: Time) -> Self {
        Self { cell, time }
    }
}

impl From<[i32; 3]> for SpaceTime {
    fn from([x, y, t]: [i32; 3]) -> Self {
        Self::new(Cell::new(x, y), t.max(0) as Time)
    }
}

impl From<SpaceTime> for [i32; 3] {
    fn from(p: SpaceTime) -> Self {
        [p.cell.x, p.cell.y, p.time as i32]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Pickup {
    pub item: usize,
    pub time: Time,
}

/// One launcher-to-launcher trip through space-time.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Route {
    pub start_time: Time,
    /// Consecutive positions, one per time from `start_time` to the final
    /// arrival at the launcher.
    pub positions: Vec<SpaceTime>,
    pub pickups: Vec<Pickup>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub owner: Option<usize>,
}

impl Route {
    /// Builds a route from a cell path starting at `start_time`.
    pub fn from_cells(start_time: Time, cells: &[Cell], pickups: Vec<Pickup>, owner: Option<usize>) -> Self {
        let positions = cells
            .iter()
            .enumerate()
            .map(|(k, &c)| SpaceTime::new(c, start_time + k as Time))
            .collect();
        Self {
            start_time,
            positions,
            pickups,
            owner,
        }
    }

    pub fn end_time(&self) -> Time {
        self.positions.last().map_or(self.start_time, |p| p.time)
    }

    pub fn num_moves(&self) -> usize {
        self.positions
            .windows(2)
            .filter(|w| w[0].cell != w[1].cell)
            .count()
    }

    /// Cell occupied at time `t`, if the route is active then.
    pub fn cell_at(&self, t: Time) -> Option<Cell> {
        let k = t.checked_sub(self.start_time)? as usize;
        self.positions.get(k).map(|p| p.cell)
    }
}

/// Checks every route invariant against the instance.
pub fn check_route(route: &Route, instance: &Instance, grid: &Grid) -> Result<()> {
    let bad = |msg: alloc::string::String| Err(Error::InvalidRoute(msg));
    let Some(first) = route.positions.first() else {
        return bad("route has no positions".into());
    };
    if first.time != route.start_time {
        return bad(format!("first position at time {} but start_time {}", first.time, route.start_time));
    }
    for (k, p) in route.positions.iter().enumerate() {
        if p.time < 1 || p.time > instance.horizon {
            return bad(format!("time {} outside 1..={}", p.time, instance.horizon));
        }
        if !grid.is_free(p.cell) {
            return bad(format!("cell {} is blocked or outside the grid", p.cell));
        }
        if k > 0 {
            let prev = route.positions[k - 1];
            if p.time != prev.time + 1 {
                return bad(format!("times {} and {} are not consecutive", prev.time, p.time));
            }
            if prev.cell != p.cell && !prev.cell.is_adjacent(p.cell) {
                return bad(format!("jump from {} to {}", prev.cell, p.cell));
            }
        }
    }
    match route.owner {
        None if first.cell != instance.launcher => {
            return bad(format!("route starts at {} instead of the launcher", first.cell));
        }
        Some(r) => {
            let Some(robot) = instance.extant_robots.get(r) else {
                return bad(format!("unknown extant robot {r}"));
            };
            if route.start_time != 1 || first.cell != robot.start_cell {
                return bad(format!("extant robot {r} route must start at {} at time 1", robot.start_cell));
            }
        }
        None => {}
    }
    let last = route.positions.last().unwrap();
    if last.cell != instance.launcher {
        return bad(format!("route ends at {} instead of the launcher", last.cell));
    }
    let mut seen = Vec::new();
    let mut load = 0u32;
    for pk in &route.pickups {
        let Some(item) = instance.items.get(pk.item) else {
            return bad(format!("unknown item {}", pk.item));
        };
        if seen.contains(&pk.item) {
            return bad(format!("item {} picked twice", pk.item));
        }
        seen.push(pk.item);
        if !item.window.contains(pk.time) {
            return bad(format!("item {} picked at {} outside its window", pk.item, pk.time));
        }
        if route.cell_at(pk.time) != Some(item.cell) {
            return bad(format!("route is not at item {} cell at time {}", pk.item, pk.time));
        }
        load += item.demand;
    }
    let cap = instance.route_capacity(route.owner);
    if load > cap {
        return bad(format!("load {load} exceeds capacity {cap}"));
    }
    Ok(())
}

/// Item costs plus the floor cost per active timestep plus the move cost per move.
pub fn route_cost(route: &Route, instance: &Instance) -> Result<f64> {
    check_route(route, instance, &instance.grid())?;
    Ok(cost_unchecked(route, instance))
}

pub(crate) fn cost_unchecked(route: &Route, instance: &Instance) -> f64 {
    let items: f64 = route
        .pickups
        .iter()
        .map(|p| instance.items[p.item].reward_cost)
        .sum();
    items
        + instance.theta1 * route.positions.len() as f64
        + instance.theta2 * route.num_moves() as f64
}
