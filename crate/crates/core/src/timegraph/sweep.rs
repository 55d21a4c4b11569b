use alloc::vec;
use alloc::vec::Vec;

use super::duals::DualSolution;
use crate::model::{Cell, Grid, Instance, SpaceEdge, SpaceTime, Time, DIRECTIONS};

const UNREACHED: u8 = u8::MAX;
const SEED: u8 = 0;
const WAIT: u8 = 1;
// 2 + k: arrived by moving in DIRECTIONS[k]

/// Arc weights of the space-time graph under a fixed set of duals.
#[derive(Debug, Clone, Copy)]
pub struct ArcWeights<'a> {
    pub instance: &'a Instance,
    pub grid: &'a Grid,
    pub duals: &'a DualSolution,
}

impl<'a> ArcWeights<'a> {
    pub fn new(instance: &'a Instance, grid: &'a Grid, duals: &'a DualSolution) -> Self {
        Self { instance, grid, duals }
    }

    /// Cost of entering position `to`: floor cost less its time and position duals.
    fn entry(&self, to: SpaceTime) -> f64 {
        self.instance.theta1 - self.duals.time_dual(to.time) - self.duals.position(to)
    }

    pub fn wait(&self, cell: Cell, from: Time) -> f64 {
        self.entry(SpaceTime::new(cell, from + 1))
    }

    pub fn step(&self, from: Cell, to: Cell, t: Time) -> f64 {
        self.instance.theta2 - self.duals.edge(SpaceEdge::new(from, to, t)) + self.entry(SpaceTime::new(to, t + 1))
    }

    /// Weight of any arc between consecutive positions.
    pub fn arc(&self, from: SpaceTime, to: Cell) -> f64 {
        if from.cell == to {
            self.wait(to, from.time)
        } else {
            self.step(from.cell, to, from.time)
        }
    }

    /// Weight of entering the floor at the launcher at time `t`.
    pub fn launch(&self, t: Time) -> f64 {
        self.entry(SpaceTime::new(self.instance.launcher, t))
    }
}

/// Shortest-path labels over the time-layered space-time graph.
#[derive(Debug, Clone)]
pub struct LayeredPaths {
    width: u32,
    ncells: usize,
    horizon: u32,
    dist: Vec<f64>,
    pred: Vec<u8>,
}

impl LayeredPaths {
    fn slot(&self, p: SpaceTime) -> Option<usize> {
        if p.time < 1 || p.time > self.horizon || p.cell.x < 0 || p.cell.y < 0 || p.cell.x as u32 >= self.width {
            return None;
        }
        let id = p.cell.y as usize * self.width as usize + p.cell.x as usize;
        (id < self.ncells).then(|| (p.time - 1) as usize * self.ncells + id)
    }

    /// Shortest distance to `p`; `+inf` when unreachable.
    pub fn dist(&self, p: SpaceTime) -> f64 {
        self.slot(p).map_or(f64::INFINITY, |k| self.dist[k])
    }

    pub fn is_reached(&self, p: SpaceTime) -> bool {
        self.slot(p).is_some_and(|k| self.pred[k] != UNREACHED)
    }

    /// Drops distances, keeping the predecessor tree.
    pub fn into_tree(self) -> PathTree {
        PathTree {
            width: self.width,
            ncells: self.ncells,
            horizon: self.horizon,
            pred: self.pred,
        }
    }

    pub fn path_to(&self, p: SpaceTime) -> Option<Vec<SpaceTime>> {
        backtrack(&self.pred, self.width, self.ncells, self.horizon, p)
    }
}

/// Predecessor tree of a finished sweep.
#[derive(Debug, Clone)]
pub struct PathTree {
    width: u32,
    ncells: usize,
    horizon: u32,
    pred: Vec<u8>,
}

impl PathTree {
    /// Positions from the seed to `p` inclusive.
    pub fn path_to(&self, p: SpaceTime) -> Option<Vec<SpaceTime>> {
        backtrack(&self.pred, self.width, self.ncells, self.horizon, p)
    }
}

fn backtrack(pred: &[u8], width: u32, ncells: usize, horizon: u32, p: SpaceTime) -> Option<Vec<SpaceTime>> {
    let slot = |q: SpaceTime| -> Option<usize> {
        if q.time < 1 || q.time > horizon || q.cell.x < 0 || q.cell.y < 0 || q.cell.x as u32 >= width {
            return None;
        }
        let id = q.cell.y as usize * width as usize + q.cell.x as usize;
        (id < ncells).then(|| (q.time - 1) as usize * ncells + id)
    };
    let mut out = Vec::new();
    let mut cur = p;
    loop {
        let code = pred[slot(cur)?];
        out.push(cur);
        match code {
            UNREACHED => return None,
            SEED => break,
            WAIT => cur = SpaceTime::new(cur.cell, cur.time - 1),
            k => {
                let (dx, dy) = DIRECTIONS[(k - 2) as usize];
                cur = SpaceTime::new(Cell::new(cur.cell.x - dx, cur.cell.y - dy), cur.time - 1);
            }
        }
    }
    out.reverse();
    Some(out)
}

/// Exact shortest paths from a set of weighted seeds.
///
/// Every arc advances time by one, so one forward pass over the time
/// layers settles each node after all of its predecessors, whatever the
/// sign of the weights. Ties keep the earlier candidate: seeds first, then
/// waits, then moves in [`DIRECTIONS`] order.
pub fn earliest_arrival_paths(weights: &ArcWeights<'_>, seeds: &[(SpaceTime, f64)]) -> LayeredPaths {
    let grid = weights.grid;
    let width = grid.width();
    let ncells = grid.num_cells();
    let horizon = weights.instance.horizon;
    let mut paths = LayeredPaths {
        width,
        ncells,
        horizon,
        dist: vec![f64::INFINITY; ncells * horizon as usize],
        pred: vec![UNREACHED; ncells * horizon as usize],
    };
    let mut first = horizon + 1;
    for &(p, w) in seeds {
        if !grid.is_free(p.cell) {
            continue;
        }
        let Some(k) = paths.slot(p) else { continue };
        if w < paths.dist[k] {
            paths.dist[k] = w;
            paths.pred[k] = SEED;
        }
        first = first.min(p.time);
    }
    for t in first..horizon {
        let layer = (t - 1) as usize * ncells;
        let next = t as usize * ncells;
        for id in 0..ncells {
            let here = paths.dist[layer + id];
            if here == f64::INFINITY {
                continue;
            }
            let cell = grid.cell(id);
            let w = here + weights.wait(cell, t);
            if w < paths.dist[next + id] {
                paths.dist[next + id] = w;
                paths.pred[next + id] = WAIT;
            }
            for (k, &(dx, dy)) in DIRECTIONS.iter().enumerate() {
                let to = Cell::new(cell.x + dx, cell.y + dy);
                if !grid.is_free(to) {
                    continue;
                }
                let tid = grid.id(to).unwrap();
                let w = here + weights.step(cell, to, t);
                if w < paths.dist[next + tid] {
                    paths.dist[next + tid] = w;
                    paths.pred[next + tid] = 2 + k as u8;
                }
            }
        }
    }
    paths
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ExtantRobot, Instance};
    use alloc::collections::BTreeMap;
    use proptest::prelude::*;

    fn open_grid(w: u32, h: u32, horizon: u32, obstacles: Vec<Cell>) -> Instance {
        Instance {
            width: w,
            height: h,
            obstacles,
            launcher: Cell::new(0, 0),
            horizon,
            fleet_size: 1,
            items: Vec::new(),
            extant_robots: Vec::<ExtantRobot>::new(),
            theta1: 1.0,
            theta2: 1.0,
            robot_capacity: 1,
        }
    }

    #[test]
    fn corner_to_corner_on_open_grid() {
        let inst = open_grid(3, 3, 8, Vec::new());
        let grid = inst.grid();
        let duals = DualSolution::zeros(&inst);
        let w = ArcWeights::new(&inst, &grid, &duals);
        let paths = earliest_arrival_paths(&w, &[(SpaceTime::new(Cell::new(0, 0), 1), 0.0)]);
        assert_eq!(paths.dist(SpaceTime::new(Cell::new(2, 2), 5)), 8.0);
        assert_eq!(paths.dist(SpaceTime::new(Cell::new(2, 2), 6)), 9.0);
        assert_eq!(paths.dist(SpaceTime::new(Cell::new(2, 2), 4)), f64::INFINITY);
        let path = paths.path_to(SpaceTime::new(Cell::new(2, 2), 5)).unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!(path[0], SpaceTime::new(Cell::new(0, 0), 1));
    }

    #[test]
    fn walled_target_is_unreachable() {
        let inst = open_grid(3, 3, 8, alloc::vec![Cell::new(1, 2), Cell::new(2, 1)]);
        let grid = inst.grid();
        let duals = DualSolution::zeros(&inst);
        let w = ArcWeights::new(&inst, &grid, &duals);
        let paths = earliest_arrival_paths(&w, &[(SpaceTime::new(Cell::new(0, 0), 1), 0.0)]);
        for t in 1..=8 {
            assert_eq!(paths.dist(SpaceTime::new(Cell::new(2, 2), t)), f64::INFINITY);
        }
    }

    #[test]
    fn position_dual_raises_arcs_into_it() {
        let inst = open_grid(3, 1, 4, Vec::new());
        let grid = inst.grid();
        let mut duals = DualSolution::zeros(&inst);
        let target = SpaceTime::new(Cell::new(1, 0), 2);
        duals.set_position(target, -3.0);
        let w = ArcWeights::new(&inst, &grid, &duals);
        assert_eq!(w.step(Cell::new(0, 0), Cell::new(1, 0), 1), 5.0);
        assert_eq!(w.wait(Cell::new(1, 0), 1), 4.0);
        assert_eq!(w.step(Cell::new(2, 0), Cell::new(1, 0), 1), 5.0);
        assert_eq!(w.step(Cell::new(0, 0), Cell::new(1, 0), 2), 2.0);
    }

    /// Bellman-Ford over the explicit arc list, independent of layer order.
    fn label_correcting(inst: &Instance, duals: &DualSolution, seed: SpaceTime) -> BTreeMap<SpaceTime, f64> {
        let grid = inst.grid();
        let w = ArcWeights::new(inst, &grid, duals);
        let mut arcs = Vec::new();
        for t in 1..inst.horizon {
            for c in grid.free_cells() {
                arcs.push((SpaceTime::new(c, t), SpaceTime::new(c, t + 1), w.wait(c, t)));
                for n in grid.neighbors(c) {
                    arcs.push((SpaceTime::new(c, t), SpaceTime::new(n, t + 1), w.step(c, n, t)));
                }
            }
        }
        let mut dist = BTreeMap::new();
        dist.insert(seed, 0.0);
        loop {
            let mut changed = false;
            for &(a, b, wt) in &arcs {
                if let Some(&da) = dist.get(&a) {
                    let nd = da + wt;
                    if dist.get(&b).is_none_or(|&db| nd < db) {
                        dist.insert(b, nd);
                        changed = true;
                    }
                }
            }
            if !changed {
                return dist;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn sweep_matches_label_correcting(
            seed in any::<u64>(),
            blocked in proptest::collection::vec((0i32..3, 0i32..3), 0..3),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let obstacles: Vec<Cell> = blocked.into_iter().map(|(x, y)| Cell::new(x, y)).filter(|c| *c != Cell::new(0, 0)).collect();
            let inst = open_grid(3, 3, 6, obstacles);
            let grid = inst.grid();
            let mut duals = DualSolution::zeros(&inst);
            for t in 1..=6 {
                duals.time[(t - 1) as usize] = -rng.random_range(0.0..2.0);
                for c in grid.free_cells() {
                    duals.set_position(SpaceTime::new(c, t), -rng.random_range(0.0..3.0));
                    for n in grid.neighbors(c) {
                        duals.set_edge(SpaceEdge::new(c, n, t), -rng.random_range(0.0..3.0));
                    }
                }
            }
            let w = ArcWeights::new(&inst, &grid, &duals);
            let seed_pos = SpaceTime::new(Cell::new(0, 0), 1);
            let sweep = earliest_arrival_paths(&w, &[(seed_pos, 0.0)]);
            let reference = label_correcting(&inst, &duals, seed_pos);
            for t in 1..=6 {
                for c in grid.free_cells() {
                    let p = SpaceTime::new(c, t);
                    let want = reference.get(&p).copied().unwrap_or(f64::INFINITY);
                    let got = sweep.dist(p);
                    prop_assert!((want == got) || (want - got).abs() < 1e-9, "{p:?}: {want} vs {got}");
                    if got.is_finite() {
                        let path = sweep.path_to(p).unwrap();
                        let sum: f64 = path.windows(2).map(|s| w.arc(s[0], s[1].cell)).sum();
                        prop_assert!((sum - got).abs() < 1e-9);
                    }
                }
            }
        }
    }
}
