use alloc::vec;
use alloc::vec::Vec;

use super::duals::DualSolution;
use super::sweep::{earliest_arrival_paths, ArcWeights, LayeredPaths, PathTree};
use crate::model::{Instance, SpaceTime, Time};

/// Dense numbering of the (item, pickup time) nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PickupIndex {
    first: Vec<usize>,
    nodes: Vec<(usize, Time)>,
}

impl PickupIndex {
    pub fn new(instance: &Instance) -> Self {
        let mut first = Vec::with_capacity(instance.items.len());
        let mut nodes = Vec::new();
        for item in &instance.items {
            first.push(nodes.len());
            nodes.extend(item.window.times().map(|t| (item.id, t)));
        }
        Self { first, nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of item `d` picked at `t`; `t` must lie in the window.
    pub fn index(&self, instance: &Instance, d: usize, t: Time) -> usize {
        self.first[d] + (t - instance.items[d].window.earliest) as usize
    }

    pub fn node(&self, k: usize) -> (usize, Time) {
        self.nodes[k]
    }
}

/// Cheapest way to finish at the launcher: cost and arrival time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Terminal {
    pub cost: f64,
    pub time: Time,
}

impl Terminal {
    const UNREACHABLE: Self = Self {
        cost: f64::INFINITY,
        time: 0,
    };
}

/// Origin of a coarse arc: the source, an extant robot or a pickup node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Source,
    Extant(usize),
    Pickup(usize),
}

/// Shortest-path weights between coarse endpoints (source, extant robots,
/// pickup nodes, sink) through plain space-time positions, computed with
/// the time, position and edge duals only.
///
/// Item and extant-robot duals enter through single arcs (the pickup arc and
/// the source arc), so full coarse weights are these base values plus
/// offsets, and the minimizing paths do not depend on them.
#[derive(Debug, Clone)]
pub struct CoarseDistanceTable {
    frozen: DualSolution,
    pickups: PickupIndex,
    source_tree: PathTree,
    source_to_pickup: Vec<f64>,
    source_to_sink: Terminal,
    extant_arc: Vec<f64>,
    extant_trees: Vec<PathTree>,
    extant_to_pickup: Vec<Vec<f64>>,
    extant_to_sink: Vec<Terminal>,
    pickup_trees: Vec<PathTree>,
    pickup_to_pickup: Vec<f64>,
    pickup_to_sink: Vec<Terminal>,
}

fn to_sink(paths: &LayeredPaths, instance: &Instance) -> Terminal {
    let mut best = Terminal::UNREACHABLE;
    for t in instance.times() {
        let d = paths.dist(SpaceTime::new(instance.launcher, t));
        if d < best.cost {
            best = Terminal { cost: d, time: t };
        }
    }
    best
}

fn to_pickups(paths: &LayeredPaths, instance: &Instance, pickups: &PickupIndex, skip_item: Option<usize>) -> Vec<f64> {
    (0..pickups.len())
        .map(|k| {
            let (d, t) = pickups.node(k);
            if Some(d) == skip_item {
                f64::INFINITY
            } else {
                paths.dist(SpaceTime::new(instance.items[d].cell, t))
            }
        })
        .collect()
}

impl CoarseDistanceTable {
    /// One layered sweep per coarse origin. Item and extant duals in
    /// `duals` are ignored.
    pub fn build(instance: &Instance, duals: &DualSolution) -> Self {
        let frozen = duals.frozen_part();
        let grid = instance.grid();
        let w = ArcWeights::new(instance, &grid, &frozen);
        let pickups = PickupIndex::new(instance);

        let seeds: Vec<_> = instance
            .times()
            .map(|t| (SpaceTime::new(instance.launcher, t), w.launch(t)))
            .collect();
        let source = earliest_arrival_paths(&w, &seeds);
        let source_to_pickup = to_pickups(&source, instance, &pickups, None);
        let source_to_sink = to_sink(&source, instance);

        let mut extant_arc = Vec::new();
        let mut extant_trees = Vec::new();
        let mut extant_to_pickup = Vec::new();
        let mut extant_to_sink = Vec::new();
        for robot in &instance.extant_robots {
            let start = SpaceTime::new(robot.start_cell, 1);
            extant_arc.push(instance.theta1 - frozen.time_dual(1) - frozen.position(start));
            let paths = earliest_arrival_paths(&w, &[(start, 0.0)]);
            extant_to_pickup.push(to_pickups(&paths, instance, &pickups, None));
            extant_to_sink.push(to_sink(&paths, instance));
            extant_trees.push(paths.into_tree());
        }

        let n = pickups.len();
        let mut pickup_trees = Vec::with_capacity(n);
        let mut pickup_to_pickup = vec![f64::INFINITY; n * n];
        let mut pickup_to_sink = Vec::with_capacity(n);
        for k in 0..n {
            let (d, t) = pickups.node(k);
            let paths = earliest_arrival_paths(&w, &[(SpaceTime::new(instance.items[d].cell, t), 0.0)]);
            let row = to_pickups(&paths, instance, &pickups, Some(d));
            pickup_to_pickup[k * n..(k + 1) * n].copy_from_slice(&row);
            pickup_to_sink.push(to_sink(&paths, instance));
            pickup_trees.push(paths.into_tree());
        }

        Self {
            frozen,
            pickups,
            source_tree: source.into_tree(),
            source_to_pickup,
            source_to_sink,
            extant_arc,
            extant_trees,
            extant_to_pickup,
            extant_to_sink,
            pickup_trees,
            pickup_to_pickup,
            pickup_to_sink,
        }
    }

    /// Duals the table was built from, with item and extant entries zeroed.
    pub fn frozen_duals(&self) -> &DualSolution {
        &self.frozen
    }

    pub fn pickups(&self) -> &PickupIndex {
        &self.pickups
    }

    /// Base weight from `origin` to pickup node `k`, excluding the pickup
    /// arc itself. `+inf` if no path exists.
    pub fn to_pickup(&self, origin: Origin, k: usize) -> f64 {
        match origin {
            Origin::Source => self.source_to_pickup[k],
            Origin::Extant(r) => self.extant_to_pickup[r][k],
            Origin::Pickup(j) => self.pickup_to_pickup[j * self.pickups.len() + k],
        }
    }

    pub fn to_sink(&self, origin: Origin) -> Terminal {
        match origin {
            Origin::Source => self.source_to_sink,
            Origin::Extant(r) => self.extant_to_sink[r],
            Origin::Pickup(j) => self.pickup_to_sink[j],
        }
    }

    /// Source-to-extant-robot arc weight without the extant dual.
    pub fn extant_arc(&self, r: usize) -> f64 {
        self.extant_arc[r]
    }

    fn tree(&self, origin: Origin) -> &PathTree {
        match origin {
            Origin::Source => &self.source_tree,
            Origin::Extant(r) => &self.extant_trees[r],
            Origin::Pickup(j) => &self.pickup_trees[j],
        }
    }

    /// Concrete positions of the stored shortest path from `origin` to `to`,
    /// both endpoints included.
    pub fn path(&self, origin: Origin, to: SpaceTime) -> Option<Vec<SpaceTime>> {
        self.tree(origin).path_to(to)
    }
}
