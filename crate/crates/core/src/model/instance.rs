use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::grid::{Cell, Grid};

/// Discrete time point, 1-based.
pub type Time = u32;

/// Inclusive pickup window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[Time; 2]", into = "[Time; 2]"))]
pub struct TimeWindow {
    pub earliest: Time,
    pub latest: Time,
}

impl TimeWindow {
    pub const fn new(earliest: Time, latest: Time) -> Self {
        Self { earliest, latest }
    }

    pub fn contains(&self, t: Time) -> bool {
        self.earliest <= t && t <= self.latest
    }

    /// Number of time points in the window.
    pub fn len(&self) -> usize {
        (self.latest + 1).saturating_sub(self.earliest) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn times(&self) -> impl Iterator<Item = Time> {
        self.earliest..=self.latest
    }
}

impl From<[Time; 2]> for TimeWindow {
    fn from([a, b]: [Time; 2]) -> Self {
        Self::new(a, b)
    }
}

impl From<TimeWindow> for [Time; 2] {
    fn from(w: TimeWindow) -> Self {
        [w.earliest, w.latest]
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Item {
    pub id: usize,
    pub cell: Cell,
    /// Cost of servicing the item; negative values are rewards.
    pub reward_cost: f64,
    pub demand: u32,
    pub window: TimeWindow,
}

/// A robot already on the floor at time 1.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtantRobot {
    pub id: usize,
    pub start_cell: Cell,
    pub remaining_capacity: u32,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Instance {
    pub width: u32,
    pub height: u32,
    pub obstacles: Vec<Cell>,
    pub launcher: Cell,
    /// Number of time points; times run over `1..=horizon`.
    pub horizon: u32,
    pub fleet_size: u32,
    pub items: Vec<Item>,
    pub extant_robots: Vec<ExtantRobot>,
    /// Cost per active timestep.
    pub theta1: f64,
    /// Cost per move.
    pub theta2: f64,
    pub robot_capacity: u32,
}

impl Instance {
    pub fn grid(&self) -> Grid {
        Grid::new(self.width, self.height, &self.obstacles)
    }

    pub fn times(&self) -> impl Iterator<Item = Time> {
        1..=self.horizon
    }

    /// Capacity available to a route, depending on its owner.
    pub fn route_capacity(&self, owner: Option<usize>) -> u32 {
        match owner {
            Some(r) => self.extant_robots[r].remaining_capacity,
            None => self.robot_capacity,
        }
    }

    /// Cost of the placeholder column that keeps an extant-robot row
    /// satisfiable before any real route for it exists.
    pub fn dummy_cost(&self) -> f64 {
        let rewards: f64 = self.items.iter().map(|d| d.reward_cost).sum();
        (1.0 - rewards) * 10.0
    }
}

/// Lists every broken instance invariant. Empty means the instance is usable.
pub fn validate_instance(instance: &Instance) -> Vec<String> {
    let mut v = Vec::new();
    let grid = instance.grid();
    if instance.width == 0 || instance.height == 0 {
        v.push(String::from("grid has no cells"));
        return v;
    }
    if instance.horizon == 0 {
        v.push(String::from("horizon must be at least 1"));
    }
    if instance.fleet_size == 0 {
        v.push(String::from("fleet size must be positive"));
    }
    if instance.robot_capacity == 0 {
        v.push(String::from("robot capacity must be positive"));
    }
    if !(instance.theta1 >= 0.0) || !(instance.theta2 >= 0.0) {
        v.push(String::from("floor and move costs must be nonnegative"));
    }
    for o in &instance.obstacles {
        if !grid.contains(*o) {
            v.push(format!("obstacle {o} outside the grid"));
        }
    }
    if !grid.is_free(instance.launcher) {
        v.push(format!("launcher {} is blocked or outside the grid", instance.launcher));
    }
    let reach = grid.bfs(instance.launcher);
    let connected = |c: Cell| grid.id(c).is_some_and(|id| reach[id].is_some());

    let mut item_cells = BTreeSet::new();
    for (k, item) in instance.items.iter().enumerate() {
        if item.id != k {
            v.push(format!("item at position {k} has id {}", item.id));
        }
        if !grid.is_free(item.cell) {
            v.push(format!("item {} sits on blocked or out-of-grid cell {}", item.id, item.cell));
        } else if !connected(item.cell) {
            v.push(format!("item {} at {} is not connected to the launcher", item.id, item.cell));
        }
        if item.cell == instance.launcher {
            v.push(format!("item {} sits on the launcher", item.id));
        }
        if !item_cells.insert(item.cell) {
            v.push(format!("item {} shares cell {} with another item", item.id, item.cell));
        }
        if item.demand == 0 {
            v.push(format!("item {} has zero demand", item.id));
        }
        if item.demand > instance.robot_capacity {
            v.push(format!(
                "item {} unserviceable: demand {} exceeds robot capacity {}",
                item.id, item.demand, instance.robot_capacity
            ));
        }
        let w = item.window;
        if w.earliest < 1 || w.earliest > w.latest || w.latest > instance.horizon {
            v.push(format!(
                "item {} window [{}, {}] not within 1..={}",
                item.id, w.earliest, w.latest, instance.horizon
            ));
        }
        if !item.reward_cost.is_finite() {
            v.push(format!("item {} has a non-finite cost", item.id));
        }
    }

    if instance.extant_robots.len() > instance.fleet_size as usize {
        v.push(format!(
            "{} extant robots exceed fleet size {}",
            instance.extant_robots.len(),
            instance.fleet_size
        ));
    }
    let mut starts = BTreeSet::new();
    for (k, r) in instance.extant_robots.iter().enumerate() {
        if r.id != k {
            v.push(format!("extant robot at position {k} has id {}", r.id));
        }
        if !grid.is_free(r.start_cell) {
            v.push(format!("extant robot {} starts on blocked cell {}", r.id, r.start_cell));
        } else if !connected(r.start_cell) {
            v.push(format!("extant robot {} at {} is not connected to the launcher", r.id, r.start_cell));
        }
        if !starts.insert(r.start_cell) {
            v.push(format!("extant robot {} shares start cell {}", r.id, r.start_cell));
        }
        if r.remaining_capacity > instance.robot_capacity {
            v.push(format!("extant robot {} has capacity above the robot capacity", r.id));
        }
    }
    v
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn small_instance() -> Instance {
        Instance {
            width: 4,
            height: 4,
            obstacles: vec![Cell::new(2, 2)],
            launcher: Cell::new(0, 0),
            horizon: 10,
            fleet_size: 2,
            items: vec![
                Item {
                    id: 0,
                    cell: Cell::new(2, 0),
                    reward_cost: -50.0,
                    demand: 2,
                    window: TimeWindow::new(2, 6),
                },
                Item {
                    id: 1,
                    cell: Cell::new(0, 3),
                    reward_cost: -50.0,
                    demand: 1,
                    window: TimeWindow::new(4, 9),
                },
            ],
            extant_robots: vec![ExtantRobot {
                id: 0,
                start_cell: Cell::new(1, 1),
                remaining_capacity: 3,
            }],
            theta1: 1.0,
            theta2: 1.0,
            robot_capacity: 3,
        }
    }

    #[test]
    fn well_formed_instance_has_no_violations() {
        assert!(validate_instance(&small_instance()).is_empty());
    }

    #[test]
    fn item_on_obstacle_is_named() {
        let mut inst = small_instance();
        inst.items[1].cell = Cell::new(2, 2);
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].contains("item 1"));
    }

    #[test]
    fn oversized_demand_is_unserviceable() {
        let mut inst = small_instance();
        inst.items[0].demand = inst.robot_capacity + 1;
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("unserviceable"));
    }

    #[test]
    fn walled_off_item_is_disconnected() {
        let mut inst = small_instance();
        inst.obstacles = vec![Cell::new(2, 3), Cell::new(3, 2)];
        inst.items[0].cell = Cell::new(3, 3);
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("not connected"));
    }

    #[test]
    fn too_many_extant_robots() {
        let mut inst = small_instance();
        inst.fleet_size = 0;
        let v = validate_instance(&inst);
        assert!(v.iter().any(|s| s.contains("fleet size must be positive")));
        assert!(v.iter().any(|s| s.contains("exceed fleet size")));
    }

    #[test]
    fn window_outside_horizon() {
        let mut inst = small_instance();
        inst.items[0].window = TimeWindow::new(5, 11);
        assert_eq!(validate_instance(&inst).len(), 1);
        inst.items[0].window = TimeWindow::new(0, 3);
        assert_eq!(validate_instance(&inst).len(), 1);
    }
}
