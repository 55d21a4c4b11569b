#![allow(dead_code)]

use mrp_core::{validate_instance, Cell, ExtantRobot, Instance, Item, TimeWindow};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random instance in the oracle's reach: at most 4x4, horizon at most 10,
/// three items, two robots and one extant robot.
pub fn tiny_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let width = rng.random_range(3..=4);
        let height = rng.random_range(3..=4);
        let horizon = rng.random_range(7..=10);
        let launcher = Cell::new(0, 0);
        let mut cells: Vec<Cell> = (0..height as i32)
            .flat_map(|y| (0..width as i32).map(move |x| Cell::new(x, y)))
            .filter(|&c| c != launcher)
            .collect();
        cells.shuffle(&mut rng);
        let n_obstacles = rng.random_range(0..=2);
        let n_items = rng.random_range(2..=3);
        let fleet_size = rng.random_range(1..=2);
        let n_extant = rng.random_range(0..=1);
        let capacity = rng.random_range(2..=3);
        let mut cells = cells.into_iter();
        let obstacles: Vec<Cell> = cells.by_ref().take(n_obstacles).collect();
        let items = (0..n_items)
            .map(|id| {
                let start = rng.random_range(1..=horizon);
                let width = rng.random_range(2..=6);
                Item {
                    id,
                    cell: cells.next().unwrap(),
                    reward_cost: [-50.0, -30.0, -15.0][rng.random_range(0..3)],
                    demand: rng.random_range(1..=2),
                    window: TimeWindow::new(start, (start + width - 1).min(horizon)),
                }
            })
            .collect();
        let extant_robots = (0..n_extant)
            .map(|id| ExtantRobot {
                id,
                start_cell: cells.next().unwrap(),
                remaining_capacity: capacity,
            })
            .collect();
        let inst = Instance {
            width,
            height,
            obstacles,
            launcher,
            horizon,
            fleet_size,
            items,
            extant_robots,
            theta1: 1.0,
            theta2: [0.0, 1.0][rng.random_range(0..2)],
            robot_capacity: capacity,
        };
        if validate_instance(&inst).is_empty() && home_reachable(&inst) {
            return inst;
        }
    }
}

/// Every extant robot can reach the launcher before the horizon ends.
fn home_reachable(inst: &Instance) -> bool {
    let grid = inst.grid();
    let dist = grid.bfs(inst.launcher);
    inst.extant_robots.iter().all(|r| {
        grid.id(r.start_cell)
            .and_then(|id| dist[id])
            .is_some_and(|d| d + 1 <= inst.horizon)
    })
}

/// A one-lane corridor where two items can only both be served by two
/// robots leaving together, which is impossible without collisions.
pub fn corridor() -> Instance {
    Instance {
        width: 4,
        height: 1,
        obstacles: vec![],
        launcher: Cell::new(0, 0),
        horizon: 8,
        fleet_size: 2,
        items: vec![
            Item { id: 0, cell: Cell::new(3, 0), reward_cost: -50.0, demand: 1, window: TimeWindow::new(4, 4) },
            Item { id: 1, cell: Cell::new(2, 0), reward_cost: -50.0, demand: 1, window: TimeWindow::new(3, 3) },
        ],
        extant_robots: vec![],
        theta1: 1.0,
        theta2: 1.0,
        robot_capacity: 1,
    }
}

/// Nonpositive item, time, position and edge duals and free extant duals,
/// with sparse collision duals.
pub fn random_duals(inst: &Instance, seed: u64) -> mrp_core::DualSolution {
    use mrp_core::{SpaceEdge, SpaceTime};
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut duals = mrp_core::DualSolution::zeros(inst);
    for v in duals.item.iter_mut() {
        *v = -rng.random_range(0.0..60.0);
    }
    for v in duals.time.iter_mut() {
        if rng.random_bool(0.5) {
            *v = -rng.random_range(0.0..3.0);
        }
    }
    for v in duals.extant.iter_mut() {
        *v = rng.random_range(-20.0..20.0);
    }
    let grid = inst.grid();
    for t in inst.times() {
        for y in 0..inst.height as i32 {
            for x in 0..inst.width as i32 {
                let c = Cell::new(x, y);
                if !grid.is_free(c) {
                    continue;
                }
                if rng.random_bool(0.15) {
                    duals.set_position(SpaceTime::new(c, t), -rng.random_range(0.0..5.0));
                }
                for n in [Cell::new(x + 1, y), Cell::new(x, y + 1)] {
                    if grid.is_free(n) && rng.random_bool(0.1) {
                        duals.set_edge(SpaceEdge::new(c, n, t), -rng.random_range(0.0..5.0));
                    }
                }
            }
        }
    }
    duals
}

/// Larger than the oracle can handle, still quick to solve: 6x6 grid,
/// horizon 16, six items, three robots with one extant.
pub fn small_instance(seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
    loop {
        let (width, height, horizon) = (6u32, 6u32, 16u32);
        let launcher = Cell::new(0, 0);
        let mut cells: Vec<Cell> = (0..height as i32)
            .flat_map(|y| (0..width as i32).map(move |x| Cell::new(x, y)))
            .filter(|&c| c != launcher)
            .collect();
        cells.shuffle(&mut rng);
        let mut cells = cells.into_iter();
        let obstacles: Vec<Cell> = cells.by_ref().take(5).collect();
        let items = (0..6)
            .map(|id| {
                let start = rng.random_range(1..=horizon);
                let width = rng.random_range(1..=8);
                Item {
                    id,
                    cell: cells.next().unwrap(),
                    reward_cost: -50.0,
                    demand: rng.random_range(1..=3),
                    window: TimeWindow::new(start, (start + width - 1).min(horizon)),
                }
            })
            .collect();
        let extant_robots = vec![ExtantRobot { id: 0, start_cell: cells.next().unwrap(), remaining_capacity: 4 }];
        let inst = Instance {
            width,
            height,
            obstacles,
            launcher,
            horizon,
            fleet_size: 3,
            items,
            extant_robots,
            theta1: 1.0,
            theta2: 1.0,
            robot_capacity: 4,
        };
        if validate_instance(&inst).is_empty() && home_reachable(&inst) {
            return inst;
        }
    }
}
