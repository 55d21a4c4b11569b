use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::duals::DualSolution;
use super::sweep::ArcWeights;
use crate::model::{Instance, Route, SpaceTime, Time};

/// Node of the pricing graph built on top of the space-time graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum AugNode {
    Source,
    Sink,
    Extant(usize),
    Position(SpaceTime),
    Pickup { item: usize, time: Time },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AugArc {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Explicit pricing graph whose source-to-sink path weights equal the
/// reduced costs of the routes they encode.
#[derive(Debug, Clone)]
pub struct AugmentedGraph {
    pub nodes: Vec<AugNode>,
    pub arcs: Vec<AugArc>,
    index: BTreeMap<AugNode, usize>,
    out: Vec<Vec<usize>>,
}

impl AugmentedGraph {
    fn add_node(&mut self, n: AugNode) -> usize {
        let k = self.nodes.len();
        self.nodes.push(n);
        self.index.insert(n, k);
        self.out.push(Vec::new());
        k
    }

    fn add_arc(&mut self, from: usize, to: usize, weight: f64) {
        self.out[from].push(self.arcs.len());
        self.arcs.push(AugArc { from, to, weight });
    }

    pub fn node(&self, n: AugNode) -> Option<usize> {
        self.index.get(&n).copied()
    }

    pub fn arc_between(&self, from: AugNode, to: AugNode) -> Option<&AugArc> {
        let (f, t) = (self.node(from)?, self.node(to)?);
        self.out[f].iter().map(|&a| &self.arcs[a]).find(|a| a.to == t)
    }

    pub fn num_position_nodes(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, AugNode::Position(_))).count()
    }

    pub fn num_pickup_nodes(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, AugNode::Pickup { .. })).count()
    }

    /// Node sequence of the path encoding `route`, source and sink included.
    /// A pickup node follows the position where the pickup happens and is
    /// the origin of the next move.
    pub fn encode_route(&self, route: &Route) -> Option<Vec<AugNode>> {
        let mut seq = Vec::with_capacity(route.positions.len() + route.pickups.len() + 3);
        seq.push(AugNode::Source);
        if let Some(r) = route.owner {
            seq.push(AugNode::Extant(r));
        }
        for p in &route.positions {
            seq.push(AugNode::Position(*p));
            if let Some(pk) = route.pickups.iter().find(|pk| pk.time == p.time) {
                seq.push(AugNode::Pickup { item: pk.item, time: pk.time });
            }
        }
        seq.push(AugNode::Sink);
        Some(seq)
    }

    /// Sum of arc weights along a node sequence; `None` if an arc is missing.
    pub fn path_weight(&self, seq: &[AugNode]) -> Option<f64> {
        seq.windows(2)
            .map(|w| self.arc_between(w[0], w[1]).map(|a| a.weight))
            .sum()
    }

    /// Plain-text adjacency listing, one node per line.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (k, n) in self.nodes.iter().enumerate() {
            let _ = write!(s, "{}", NodeLabel(*n));
            for &a in &self.out[k] {
                let arc = &self.arcs[a];
                let _ = write!(s, " -> {} [{}]", NodeLabel(self.nodes[arc.to]), arc.weight);
            }
            s.push('\n');
        }
        s
    }
}

struct NodeLabel(AugNode);

impl core::fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self.0 {
            AugNode::Source => write!(f, "source"),
            AugNode::Sink => write!(f, "sink"),
            AugNode::Extant(r) => write!(f, "extant{r}"),
            AugNode::Position(p) => write!(f, "p({},{})@{}", p.cell.x, p.cell.y, p.time),
            AugNode::Pickup { item, time } => write!(f, "pick{item}@{time}"),
        }
    }
}

/// Builds the explicit pricing graph for the given duals.
pub fn build_augmented(instance: &Instance, duals: &DualSolution) -> AugmentedGraph {
    let grid = instance.grid();
    let w = ArcWeights::new(instance, &grid, duals);
    let mut g = AugmentedGraph {
        nodes: Vec::new(),
        arcs: Vec::new(),
        index: BTreeMap::new(),
        out: Vec::new(),
    };
    let source = g.add_node(AugNode::Source);
    let sink = g.add_node(AugNode::Sink);
    for t in instance.times() {
        for c in grid.free_cells() {
            g.add_node(AugNode::Position(SpaceTime::new(c, t)));
        }
    }
    for item in &instance.items {
        for t in item.window.times() {
            g.add_node(AugNode::Pickup { item: item.id, time: t });
        }
    }
    for r in 0..instance.extant_robots.len() {
        g.add_node(AugNode::Extant(r));
    }

    let pos = |g: &AugmentedGraph, p: SpaceTime| g.index[&AugNode::Position(p)];
    // wait and move arcs, mirrored out of every pickup node at the same position
    for t in 1..instance.horizon {
        for c in grid.free_cells() {
            let here = SpaceTime::new(c, t);
            let mut origins = alloc::vec![pos(&g, here)];
            if let Some(item) = instance.items.iter().find(|d| d.cell == c && d.window.contains(t)) {
                origins.push(g.index[&AugNode::Pickup { item: item.id, time: t }]);
            }
            let mut targets = alloc::vec![(c, w.wait(c, t))];
            targets.extend(grid.neighbors(c).map(|n| (n, w.step(c, n, t))));
            for &o in &origins {
                for &(n, wt) in &targets {
                    let to = pos(&g, SpaceTime::new(n, t + 1));
                    g.add_arc(o, to, wt);
                }
            }
        }
    }
    for item in &instance.items {
        let offset = item.reward_cost - duals.item[item.id];
        for t in item.window.times() {
            let from = pos(&g, SpaceTime::new(item.cell, t));
            let to = g.index[&AugNode::Pickup { item: item.id, time: t }];
            g.add_arc(from, to, offset);
        }
    }
    for t in instance.times() {
        let launch = pos(&g, SpaceTime::new(instance.launcher, t));
        g.add_arc(source, launch, w.launch(t));
        g.add_arc(launch, sink, 0.0);
    }
    for (r, robot) in instance.extant_robots.iter().enumerate() {
        let start = SpaceTime::new(robot.start_cell, 1);
        let node = g.index[&AugNode::Extant(r)];
        let weight = instance.theta1 - duals.extant[r] - duals.time_dual(1) - duals.position(start);
        g.add_arc(source, node, weight);
        g.add_arc(node, pos(&g, start), 0.0);
    }
    g
}
