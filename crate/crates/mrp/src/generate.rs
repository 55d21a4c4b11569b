//! Seeded random instances in the style of the published experiment classes.

use std::collections::VecDeque;
use std::str::FromStr;

use mrp_core::{validate_instance, Cell, ExtantRobot, Instance, Item, TimeWindow};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Layout attempts before giving up on a connected instance.
pub const RETRY_CAP: usize = 1000;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum GenerateError {
    #[error("{needed} cells needed but the grid has only {cells}")]
    TooCrowded { needed: usize, cells: usize },
    #[error("no connected layout after {0} attempts")]
    RetryCapExceeded(usize),
    #[error("inconsistent parameters: {0}")]
    Params(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorParams {
    pub width: u32,
    pub height: u32,
    pub n_items: usize,
    pub n_obstacles: usize,
    pub fleet_size: u32,
    pub n_extant: usize,
    pub horizon: u32,
    pub robot_capacity: u32,
    pub demand_choices: Vec<u32>,
    pub item_reward: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// `None` gives every item the whole horizon.
    pub max_window_width: Option<u32>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Class1,
    Class2,
    MapfCmp,
    Tiny,
}

impl FromStr for Preset {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "class1" => Ok(Self::Class1),
            "class2" => Ok(Self::Class2),
            "mapf-cmp" => Ok(Self::MapfCmp),
            "tiny" => Ok(Self::Tiny),
            _ => Err(format!("unknown preset {s:?}; expected class1, class2, mapf-cmp or tiny")),
        }
    }
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Self::Class1 => "class1",
            Self::Class2 => "class2",
            Self::MapfCmp => "mapf-cmp",
            Self::Tiny => "tiny",
        }
    }

    pub fn params(self, seed: u64) -> GeneratorParams {
        let class1 = GeneratorParams {
            width: 10,
            height: 10,
            n_items: 15,
            n_obstacles: 15,
            fleet_size: 4,
            n_extant: 2,
            horizon: 30,
            robot_capacity: 6,
            demand_choices: vec![1, 2, 3],
            item_reward: -50.0,
            theta1: 1.0,
            theta2: 1.0,
            max_window_width: Some(20),
            seed,
        };
        match self {
            Self::Class1 => class1,
            Self::Class2 => GeneratorParams {
                width: 20,
                height: 20,
                n_items: 25,
                n_obstacles: 40,
                fleet_size: 5,
                horizon: 100,
                max_window_width: Some(8),
                ..class1
            },
            Self::MapfCmp => GeneratorParams {
                width: 20,
                height: 20,
                n_items: 35,
                n_obstacles: 100,
                fleet_size: 9,
                n_extant: 1,
                horizon: 25,
                item_reward: -15.0,
                theta2: 0.0,
                max_window_width: None,
                ..class1
            },
            Self::Tiny => GeneratorParams {
                width: 4,
                height: 4,
                n_items: 3,
                n_obstacles: 2,
                fleet_size: 2,
                n_extant: 1,
                horizon: 10,
                robot_capacity: 3,
                demand_choices: vec![1, 2],
                max_window_width: Some(6),
                ..class1
            },
        }
    }
}

/// Launcher of every generated instance.
pub const LAUNCHER: Cell = Cell { x: 0, y: 0 };

/// Draws an instance. Obstacles, item cells and extant starts are sampled
/// without replacement; the whole layout is redrawn until every item and
/// extant start is connected to the launcher.
pub fn generate(params: &GeneratorParams) -> Result<Instance, GenerateError> {
    let cells = (params.width * params.height) as usize;
    let needed = params.n_items + params.n_obstacles + params.n_extant + 1;
    if needed > cells {
        return Err(GenerateError::TooCrowded { needed, cells });
    }
    if params.demand_choices.is_empty() && params.n_items > 0 {
        return Err(GenerateError::Params("no demand choices".into()));
    }
    if params.horizon == 0 || params.max_window_width == Some(0) {
        return Err(GenerateError::Params("horizon and window width must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    for _ in 0..RETRY_CAP {
        let inst = draw(params, &mut rng);
        if connected(&inst) {
            let problems = validate_instance(&inst);
            if !problems.is_empty() {
                return Err(GenerateError::Params(problems.join("; ")));
            }
            return Ok(inst);
        }
    }
    Err(GenerateError::RetryCapExceeded(RETRY_CAP))
}

fn draw(p: &GeneratorParams, rng: &mut ChaCha8Rng) -> Instance {
    let mut free: Vec<Cell> = (0..p.height as i32)
        .flat_map(|y| (0..p.width as i32).map(move |x| Cell::new(x, y)))
        .filter(|&c| c != LAUNCHER)
        .collect();
    free.shuffle(rng);
    let mut free = free.into_iter();
    let obstacles: Vec<Cell> = free.by_ref().take(p.n_obstacles).collect();
    let items = (0..p.n_items)
        .map(|id| {
            let cell = free.next().unwrap();
            let demand = *p.demand_choices.choose(rng).unwrap();
            let window = match p.max_window_width {
                None => TimeWindow::new(1, p.horizon),
                Some(w) => {
                    let start = rng.random_range(1..=p.horizon);
                    let width = rng.random_range(1..=w);
                    TimeWindow::new(start, (start + width - 1).min(p.horizon))
                }
            };
            Item { id, cell, reward_cost: p.item_reward, demand, window }
        })
        .collect();
    let extant_robots = (0..p.n_extant)
        .map(|id| ExtantRobot { id, start_cell: free.next().unwrap(), remaining_capacity: p.robot_capacity })
        .collect();
    Instance {
        width: p.width,
        height: p.height,
        obstacles,
        launcher: LAUNCHER,
        horizon: p.horizon,
        fleet_size: p.fleet_size,
        items,
        extant_robots,
        theta1: p.theta1,
        theta2: p.theta2,
        robot_capacity: p.robot_capacity,
    }
}

/// Every item is connected to the launcher and every extant robot can get
/// back to it before the horizon ends.
fn connected(inst: &Instance) -> bool {
    let (w, h) = (inst.width as i32, inst.height as i32);
    let idx = |c: Cell| (c.y * w + c.x) as usize;
    let mut blocked = vec![false; (w * h) as usize];
    for &o in &inst.obstacles {
        blocked[idx(o)] = true;
    }
    let mut dist = vec![u32::MAX; blocked.len()];
    let mut queue = VecDeque::from([inst.launcher]);
    dist[idx(inst.launcher)] = 0;
    while let Some(c) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let n = Cell::new(c.x + dx, c.y + dy);
            if n.x >= 0 && n.y >= 0 && n.x < w && n.y < h && !blocked[idx(n)] && dist[idx(n)] == u32::MAX {
                dist[idx(n)] = dist[idx(c)] + 1;
                queue.push_back(n);
            }
        }
    }
    inst.items.iter().all(|d| dist[idx(d.cell)] != u32::MAX)
        && inst.extant_robots.iter().all(|r| dist[idx(r.start_cell)] < inst.horizon)
}

/// A one-lane corridor where both items can only be served by two robots
/// leaving the launcher together, which collides.
pub fn corridor() -> Instance {
    Instance {
        width: 4,
        height: 1,
        obstacles: vec![],
        launcher: LAUNCHER,
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
