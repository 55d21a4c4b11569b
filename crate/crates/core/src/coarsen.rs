//! Time-aggregated pricing graph.
//!
//! Each item's pickup window is split into consecutive sub-windows by a
//! sorted set of boundary times. An aggregate node stands for "pick item `d`
//! somewhere in sub-window `j`", and every aggregate arc carries the
//! cheapest coarse weight over all time choices at its two ends, together
//! with the times that achieve it. Because incoming and outgoing arcs pick
//! their times independently, paths in this graph are a relaxation; adding
//! the minimizer times of a path as new boundaries makes the relaxation
//! tighter until every item on the path is entered and left at the same
//! time, at which point the path is a real route.

use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Instance, Time};
use crate::timegraph::{CoarseDistanceTable, DualSolution, Origin, Terminal};

/// Per item, a strictly increasing set of boundaries inside
/// `[earliest, latest + 1]` that always contains both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimePartition {
    sets: Vec<Vec<Time>>,
}

/// One boundary set per item holding just the window ends.
pub fn init_partition(instance: &Instance) -> TimePartition {
    TimePartition {
        sets: instance
            .items
            .iter()
            .map(|d| vec![d.window.earliest, d.window.latest + 1])
            .collect(),
    }
}

impl TimePartition {
    pub fn boundaries(&self, d: usize) -> &[Time] {
        &self.sets[d]
    }

    /// Sub-windows of item `d` as inclusive `(first, last)` pairs.
    pub fn windows(&self, d: usize) -> impl Iterator<Item = (Time, Time)> + '_ {
        self.sets[d].windows(2).map(|w| (w[0], w[1] - 1))
    }

    pub fn num_windows(&self, d: usize) -> usize {
        self.sets[d].len() - 1
    }

    /// Sum of the boundary set sizes.
    pub fn total_size(&self) -> usize {
        self.sets.iter().map(Vec::len).sum()
    }

    /// Adds boundary `t` to item `d`; returns whether it was new.
    pub fn insert(&mut self, d: usize, t: Time) -> bool {
        let set = &mut self.sets[d];
        match set.binary_search(&t) {
            Ok(_) => false,
            Err(pos) => {
                debug_assert!(pos > 0 && pos < set.len(), "boundary {t} outside the window");
                set.insert(pos, t);
                true
            }
        }
    }

    /// Upper bound on how often refinement can grow the partition.
    pub fn max_growth(instance: &Instance) -> usize {
        instance
            .items
            .iter()
            .map(|d| d.window.len().saturating_sub(1))
            .sum()
    }
}

/// Dual-dependent terms that shift whole coarse arcs without moving paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ItemOffsets {
    /// `reward_cost - item dual`, added to every arc that ends in a pickup.
    pub item: Vec<f64>,
    /// Extant-robot duals, subtracted from the source arc into each robot.
    pub extant: Vec<f64>,
}

impl ItemOffsets {
    pub fn new(instance: &Instance, duals: &DualSolution) -> Self {
        Self {
            item: instance
                .items
                .iter()
                .map(|d| d.reward_cost - duals.item[d.id])
                .collect(),
            extant: duals.extant.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AggNode {
    Source,
    Sink,
    Extant(usize),
    /// Sub-window `index` of `item`.
    Window { item: usize, index: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggArc {
    pub to: usize,
    pub weight: f64,
    /// Pickup time at the tail item that achieves the minimum.
    pub depart: Option<Time>,
    /// Pickup time at the head item, or launcher arrival when entering the sink.
    pub arrive: Option<Time>,
}

/// An arc used by a pricing solution, with its minimizer times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UsedArc {
    pub from: AggNode,
    pub to: AggNode,
    pub depart: Option<Time>,
    pub arrive: Option<Time>,
}

#[derive(Debug, Clone)]
pub struct AggregateGraph {
    nodes: Vec<AggNode>,
    /// `(item, first, last)` of every window node, aligned with `nodes`.
    spans: Vec<Option<(usize, Time, Time)>>,
    out: Vec<Vec<AggArc>>,
    extant_seed: Vec<f64>,
}

pub const SOURCE: usize = 0;
pub const SINK: usize = 1;

impl AggregateGraph {
    pub fn nodes(&self) -> &[AggNode] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> AggNode {
        self.nodes[id]
    }

    pub fn extant_node(&self, r: usize) -> usize {
        2 + r
    }

    pub fn out_arcs(&self, id: usize) -> &[AggArc] {
        &self.out[id]
    }

    /// Item serviced at a window node.
    pub fn item_of(&self, id: usize) -> Option<usize> {
        self.spans[id].map(|(d, _, _)| d)
    }

    pub fn span(&self, id: usize) -> Option<(usize, Time, Time)> {
        self.spans[id]
    }

    /// Weight of the source arc into extant robot `r`.
    pub fn extant_seed(&self, r: usize) -> f64 {
        self.extant_seed[r]
    }

    pub fn arc(&self, from: usize, to: usize) -> Option<&AggArc> {
        self.out[from].iter().find(|a| a.to == to)
    }

    pub fn num_arcs(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }
}

fn best_into(
    table: &CoarseDistanceTable,
    instance: &Instance,
    origin: Origin,
    d: usize,
    lo: Time,
    hi: Time,
) -> Option<(f64, Time)> {
    let mut best: Option<(f64, Time)> = None;
    for t in lo..=hi {
        let w = table.to_pickup(origin, table.pickups().index(instance, d, t));
        if w < best.map_or(f64::INFINITY, |b| b.0) {
            best = Some((w, t));
        }
    }
    best
}

/// Builds the aggregate graph for a partition from cached coarse weights.
///
/// Ties between equally cheap times resolve to the earliest departure, then
/// the earliest arrival.
pub fn build_aggregate(
    instance: &Instance,
    partition: &TimePartition,
    table: &CoarseDistanceTable,
    offsets: &ItemOffsets,
) -> AggregateGraph {
    let nr = instance.extant_robots.len();
    let mut nodes = vec![AggNode::Source, AggNode::Sink];
    let mut spans = vec![None, None];
    for r in 0..nr {
        nodes.push(AggNode::Extant(r));
        spans.push(None);
    }
    for d in 0..instance.items.len() {
        for (j, (lo, hi)) in partition.windows(d).enumerate() {
            nodes.push(AggNode::Window { item: d, index: j });
            spans.push(Some((d, lo, hi)));
        }
    }
    let mut out = vec![Vec::new(); nodes.len()];
    let first_window = 2 + nr;
    let pickups = table.pickups();

    let sink_arc = |t: Terminal, depart: Option<Time>| AggArc {
        to: SINK,
        weight: t.cost,
        depart,
        arrive: Some(t.time),
    };

    for (origin, id) in core::iter::once((Origin::Source, SOURCE)).chain((0..nr).map(|r| (Origin::Extant(r), 2 + r))) {
        for w in first_window..nodes.len() {
            let (d, lo, hi) = spans[w].unwrap();
            if let Some((base, t)) = best_into(table, instance, origin, d, lo, hi) {
                out[id].push(AggArc {
                    to: w,
                    weight: base + offsets.item[d],
                    depart: None,
                    arrive: Some(t),
                });
            }
        }
        let term = table.to_sink(origin);
        if term.cost.is_finite() {
            out[id].push(sink_arc(term, None));
        }
    }

    for from in first_window..nodes.len() {
        let (di, lo_i, hi_i) = spans[from].unwrap();
        let mut sink: Option<(Terminal, Time)> = None;
        for t0 in lo_i..=hi_i {
            let term = table.to_sink(Origin::Pickup(pickups.index(instance, di, t0)));
            if term.cost < sink.map_or(f64::INFINITY, |s| s.0.cost) {
                sink = Some((term, t0));
            }
        }
        for to in first_window..nodes.len() {
            let (dk, lo_k, hi_k) = spans[to].unwrap();
            if dk == di {
                continue;
            }
            let mut best: Option<(f64, Time, Time)> = None;
            for t0 in lo_i..=hi_i {
                let origin = Origin::Pickup(pickups.index(instance, di, t0));
                for t1 in lo_k.max(t0 + 1)..=hi_k {
                    let w = table.to_pickup(origin, pickups.index(instance, dk, t1));
                    if w < best.map_or(f64::INFINITY, |b| b.0) {
                        best = Some((w, t0, t1));
                    }
                }
            }
            if let Some((base, t0, t1)) = best {
                out[from].push(AggArc {
                    to,
                    weight: base + offsets.item[dk],
                    depart: Some(t0),
                    arrive: Some(t1),
                });
            }
        }
        if let Some((term, t0)) = sink {
            out[from].push(sink_arc(term, Some(t0)));
        }
    }

    let extant_seed = (0..nr).map(|r| table.extant_arc(r) - offsets.extant[r]).collect();
    AggregateGraph {
        nodes,
        spans,
        out,
        extant_seed,
    }
}

/// Adds the minimizer times of the used arcs to the boundary sets: the
/// departure time to the tail item and the arrival time to the head item.
/// Source, extant-robot and sink endpoints add nothing.
pub fn refine(partition: &TimePartition, used: &[UsedArc]) -> (TimePartition, bool) {
    let mut next = partition.clone();
    let before = next.total_size();
    for arc in used {
        if let (AggNode::Window { item, .. }, Some(t)) = (arc.from, arc.depart) {
            next.insert(item, t);
        }
        if let (AggNode::Window { item, .. }, Some(t)) = (arc.to, arc.arrive) {
            next.insert(item, t);
        }
    }
    let grew = next.total_size() > before;
    (next, grew)
}
