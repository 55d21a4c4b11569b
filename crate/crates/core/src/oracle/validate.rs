use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Cell, Instance, Route, Time};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ViolationKind {
    VertexConflict,
    EdgeConflict,
    FleetOverflow,
    Window,
    Capacity,
    DuplicateItem,
    BadStartEnd,
    ExtantUnassigned,
    /// Broken space-time path, unknown ids, or a pickup away from the item.
    InvalidPath,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub objective_recomputed: f64,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> BTreeSet<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }
}

fn free(instance: &Instance, c: Cell) -> bool {
    c.x >= 0
        && c.y >= 0
        && (c.x as u32) < instance.width
        && (c.y as u32) < instance.height
        && !instance.obstacles.contains(&c)
}

/// Checks a full solution from scratch against every constraint of the
/// routing problem and recomputes its cost.
pub fn validate_solution(instance: &Instance, routes: &[Route]) -> ValidationReport {
    let mut v = Vec::new();
    let mut flag = |kind, detail: String| v.push(Violation { kind, detail });
    let mut objective = 0.0;

    // per-route checks
    let mut occupancy: Vec<BTreeMap<Time, Cell>> = Vec::with_capacity(routes.len());
    for (k, r) in routes.iter().enumerate() {
        let mut cells = BTreeMap::new();
        if r.positions.is_empty() {
            flag(ViolationKind::InvalidPath, format!("route {k} is empty"));
            occupancy.push(cells);
            continue;
        }
        for (i, p) in r.positions.iter().enumerate() {
            if p.time < 1 || p.time > instance.horizon {
                flag(ViolationKind::InvalidPath, format!("route {k} at time {} outside the horizon", p.time));
            }
            if !free(instance, p.cell) {
                flag(ViolationKind::InvalidPath, format!("route {k} on blocked cell {} at {}", p.cell, p.time));
            }
            if i > 0 {
                let q = r.positions[i - 1];
                let dist = (p.cell.x - q.cell.x).abs() + (p.cell.y - q.cell.y).abs();
                if p.time != q.time + 1 || dist > 1 {
                    flag(ViolationKind::InvalidPath, format!("route {k} jumps from {} at {} to {} at {}", q.cell, q.time, p.cell, p.time));
                }
            }
            cells.insert(p.time, p.cell);
        }
        if r.start_time != r.positions[0].time {
            flag(ViolationKind::InvalidPath, format!("route {k} start time disagrees with its first position"));
        }
        let first = r.positions[0];
        let last = r.positions[r.positions.len() - 1];
        match r.owner {
            None if first.cell != instance.launcher => {
                flag(ViolationKind::BadStartEnd, format!("route {k} starts at {} instead of the launcher", first.cell));
            }
            Some(o) => match instance.extant_robots.get(o) {
                None => flag(ViolationKind::InvalidPath, format!("route {k} names unknown extant robot {o}")),
                Some(robot) if first.cell != robot.start_cell || first.time != 1 => flag(
                    ViolationKind::BadStartEnd,
                    format!("route {k} of extant robot {o} starts at {} at {}", first.cell, first.time),
                ),
                Some(_) => {}
            },
            None => {}
        }
        if last.cell != instance.launcher {
            flag(ViolationKind::BadStartEnd, format!("route {k} ends at {} instead of the launcher", last.cell));
        }

        let mut load = 0u32;
        let mut seen = BTreeSet::new();
        for p in &r.pickups {
            let Some(item) = instance.items.get(p.item) else {
                flag(ViolationKind::InvalidPath, format!("route {k} picks unknown item {}", p.item));
                continue;
            };
            if !seen.insert(p.item) {
                flag(ViolationKind::DuplicateItem, format!("route {k} picks item {} twice", p.item));
                continue;
            }
            if p.time < item.window.earliest || p.time > item.window.latest {
                flag(ViolationKind::Window, format!("route {k} picks item {} at {} outside its window", p.item, p.time));
            }
            if cells.get(&p.time) != Some(&item.cell) {
                flag(ViolationKind::InvalidPath, format!("route {k} is not on item {} at {}", p.item, p.time));
            }
            load += item.demand;
            objective += item.reward_cost;
        }
        let cap = match r.owner.and_then(|o| instance.extant_robots.get(o)) {
            Some(robot) => robot.remaining_capacity,
            None => instance.robot_capacity,
        };
        if load > cap {
            flag(ViolationKind::Capacity, format!("route {k} carries {load} over capacity {cap}"));
        }
        let moves = r.positions.windows(2).filter(|w| w[0].cell != w[1].cell).count();
        objective += instance.theta1 * r.positions.len() as f64 + instance.theta2 * moves as f64;
        occupancy.push(cells);
    }

    // items across routes
    let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (k, r) in routes.iter().enumerate() {
        let distinct: BTreeSet<usize> = r.pickups.iter().map(|p| p.item).collect();
        for d in distinct {
            holders.entry(d).or_default().push(k);
        }
    }
    for (d, ks) in &holders {
        if ks.len() > 1 {
            flag(ViolationKind::DuplicateItem, format!("item {d} picked by routes {ks:?}"));
        }
    }

    // extant robots
    for robot in 0..instance.extant_robots.len() {
        let n = routes.iter().filter(|r| r.owner == Some(robot)).count();
        if n != 1 {
            flag(ViolationKind::ExtantUnassigned, format!("extant robot {robot} has {n} routes"));
        }
    }

    // fleet size
    let mut active = vec![0u32; instance.horizon as usize + 2];
    for cells in &occupancy {
        for &t in cells.keys() {
            if let Some(a) = active.get_mut(t as usize) {
                *a += 1;
            }
        }
    }
    for (t, &a) in active.iter().enumerate() {
        if a > instance.fleet_size {
            flag(ViolationKind::FleetOverflow, format!("{a} robots active at {t}, fleet is {}", instance.fleet_size));
        }
    }

    // pairwise conflicts
    for i in 0..occupancy.len() {
        for j in i + 1..occupancy.len() {
            for (&t, &c) in &occupancy[i] {
                if occupancy[j].get(&t) == Some(&c) {
                    flag(ViolationKind::VertexConflict, format!("routes {i} and {j} both on {c} at {t}"));
                }
                let (Some(&c2), Some(&o1), Some(&o2)) = (occupancy[i].get(&(t + 1)), occupancy[j].get(&t), occupancy[j].get(&(t + 1))) else {
                    continue;
                };
                if c != c2 && ((o1 == c && o2 == c2) || (o1 == c2 && o2 == c)) {
                    flag(ViolationKind::EdgeConflict, format!("routes {i} and {j} both use edge {c}-{c2} at {t}"));
                }
            }
        }
    }

    ValidationReport {
        violations: v,
        objective_recomputed: objective,
    }
}
