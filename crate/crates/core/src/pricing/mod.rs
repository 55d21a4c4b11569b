//! Pricing: cheapest route under the current duals.
//!
//! The search runs on the aggregate graph. After each labeling pass the
//! minimizer times of the best path are added to the item partitions; once
//! that adds nothing, the best path has a consistent timeline and is a real
//! route, and the remaining consistent sink labels supply extra columns.

mod label;

pub use label::{dominate, rcsp_label, DpLabel, LabelPool};

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::coarsen::{build_aggregate, refine, AggNode, AggregateGraph, ItemOffsets, TimePartition};
use crate::error::{Error, Result};
use crate::model::{Instance, Pickup, Route, SpaceTime};
use crate::timegraph::{CoarseDistanceTable, Origin};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PricingConfig {
    /// Most routes returned per call.
    pub max_columns: usize,
    pub dominance: bool,
}

impl Default for PricingConfig {
    fn default() -> Self {
        Self {
            max_columns: 20,
            dominance: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PricingResult {
    /// Negative reduced-cost routes, cheapest first, at most one per column.
    pub routes: Vec<Route>,
    /// Reduced cost of each returned route under the pricing duals.
    pub reduced_costs: Vec<f64>,
    /// Cheapest reduced cost found, possibly nonnegative.
    pub best_reduced_cost: f64,
    /// Labeling passes run, the last one included.
    pub refinement_rounds: usize,
}

/// Largest number of labeling passes a pricing call can need.
pub fn round_bound(instance: &Instance) -> usize {
    instance.items.iter().map(|d| d.window.len() + 1).sum::<usize>().max(1)
}

/// Solves the pricing problem for the duals behind `table` and `offsets`.
///
/// `partition` is refined in place and may be reused by later calls that
/// share the same table.
pub fn price(
    instance: &Instance,
    table: &CoarseDistanceTable,
    offsets: &ItemOffsets,
    partition: &mut TimePartition,
    config: &PricingConfig,
) -> Result<PricingResult> {
    if instance.items.len() > 128 {
        return Err(Error::TooManyItems(instance.items.len()));
    }
    let bound = round_bound(instance);
    let mut rounds = 0;
    let (graph, pool, best) = loop {
        rounds += 1;
        if rounds > bound {
            return Err(Error::RefinementBound(bound));
        }
        let graph = build_aggregate(instance, partition, table, offsets);
        let pool = rcsp_label(&graph, instance, config.dominance);
        // the source always reaches the sink through the empty trip
        let best = pool.best().expect("no sink label");
        let (next, grew) = refine(partition, &pool.used_arcs(&graph, best));
        if !grew {
            break (graph, pool, best);
        }
        *partition = next;
    };
    debug_assert!(pool.is_consistent(&graph, best));
    let best_reduced_cost = pool.labels[best].cost;

    let mut sink = pool.sink.clone();
    sink.sort_by(|&a, &b| pool.labels[a].cost.total_cmp(&pool.labels[b].cost).then(a.cmp(&b)));
    let mut seen = BTreeSet::new();
    let mut routes = Vec::new();
    let mut reduced_costs = Vec::new();
    for id in sink {
        let cost = pool.labels[id].cost;
        if routes.len() >= config.max_columns || cost >= 0.0 {
            break;
        }
        if !pool.is_consistent(&graph, id) {
            continue;
        }
        let route = extract_route(instance, table, &graph, &pool, id);
        let key = (route.owner, route.positions.clone(), {
            let mut items: Vec<usize> = route.pickups.iter().map(|p| p.item).collect();
            items.sort_unstable();
            items
        });
        if seen.insert(key) {
            routes.push(route);
            reduced_costs.push(cost);
        }
    }
    Ok(PricingResult {
        routes,
        reduced_costs,
        best_reduced_cost,
        refinement_rounds: rounds,
    })
}

/// Turns a consistent sink label into a route by joining the stored
/// shortest paths between its anchors.
pub fn extract_route(
    instance: &Instance,
    table: &CoarseDistanceTable,
    graph: &AggregateGraph,
    pool: &LabelPool,
    id: usize,
) -> Route {
    let chain = pool.chain(id);
    let (mut at, owner) = match graph.node(pool.labels[chain[0]].node) {
        AggNode::Source => (Origin::Source, None),
        AggNode::Extant(r) => (Origin::Extant(r), Some(r)),
        _ => unreachable!("chains start at a seed"),
    };
    let mut positions: Vec<SpaceTime> = Vec::new();
    let mut pickups = Vec::new();
    for &k in &chain[1..] {
        let l = &pool.labels[k];
        let target = match graph.node(l.node) {
            AggNode::Window { item, .. } => {
                let t = l.arrive.unwrap();
                pickups.push(Pickup { item, time: t });
                SpaceTime::new(instance.items[item].cell, t)
            }
            AggNode::Sink => SpaceTime::new(instance.launcher, l.arrive.unwrap()),
            AggNode::Source | AggNode::Extant(_) => unreachable!("seeds have no parent"),
        };
        let leg = table.path(at, target).expect("stored path for a finite arc");
        let skip = usize::from(!positions.is_empty());
        positions.extend_from_slice(&leg[skip..]);
        if let Some(last) = pickups.last() {
            at = Origin::Pickup(table.pickups().index(instance, last.item, last.time));
        }
    }
    Route {
        start_time: positions[0].time,
        positions,
        pickups,
        owner,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coarsen::init_partition;
    use crate::model::{make_column, Cell, Item, TimeWindow};
    use crate::timegraph::DualSolution;

    fn one_item(theta_d: f64) -> Instance {
        Instance {
            width: 3,
            height: 3,
            obstacles: Vec::new(),
            launcher: Cell::new(0, 0),
            horizon: 10,
            fleet_size: 1,
            items: alloc::vec![Item {
                id: 0,
                cell: Cell::new(2, 2),
                reward_cost: theta_d,
                demand: 1,
                window: TimeWindow::new(1, 10),
            }],
            extant_robots: Vec::new(),
            theta1: 1.0,
            theta2: 0.0,
            robot_capacity: 2,
        }
    }

    fn run(inst: &Instance, duals: &DualSolution) -> PricingResult {
        let table = CoarseDistanceTable::build(inst, duals);
        let mut part = init_partition(inst);
        price(inst, &table, &ItemOffsets::new(inst, duals), &mut part, &PricingConfig::default()).unwrap()
    }

    #[test]
    fn single_item_round_trip() {
        // four steps out, four back: nine active steps
        let inst = one_item(-50.0);
        let res = run(&inst, &DualSolution::zeros(&inst));
        assert_eq!(res.best_reduced_cost, -41.0);
        let route = &res.routes[0];
        assert_eq!(route.positions.len(), 9);
        assert_eq!(route.cell_at(route.pickups[0].time), Some(Cell::new(2, 2)));
    }

    #[test]
    fn unprofitable_items_yield_nothing() {
        let inst = one_item(0.0);
        let res = run(&inst, &DualSolution::zeros(&inst));
        assert!(res.routes.is_empty());
        assert!(res.best_reduced_cost >= 0.0);
    }

    #[test]
    fn label_cost_is_route_reduced_cost() {
        let mut inst = one_item(-50.0);
        inst.items.push(Item {
            id: 1,
            cell: Cell::new(0, 2),
            reward_cost: -20.0,
            demand: 1,
            window: TimeWindow::new(3, 5),
        });
        let mut duals = DualSolution::zeros(&inst);
        duals.item[0] = -30.0;
        duals.time[4] = -2.0;
        duals.set_position(SpaceTime::new(Cell::new(1, 2), 4), -1.0);
        let res = run(&inst, &duals);
        assert!(!res.routes.is_empty());
        for (route, rc) in res.routes.iter().zip(&res.reduced_costs) {
            let col = make_column(route, &inst).unwrap();
            assert!((duals.reduced_cost(&col) - rc).abs() < 1e-9);
        }
    }

    #[test]
    fn capacity_blocks_joint_pickup() {
        let mut inst = one_item(-50.0);
        inst.robot_capacity = 6;
        inst.items[0].demand = 2;
        inst.items.push(Item {
            id: 1,
            cell: Cell::new(0, 2),
            reward_cost: -50.0,
            demand: 5,
            window: TimeWindow::new(1, 10),
        });
        let res = run(&inst, &DualSolution::zeros(&inst));
        assert!(res.routes.iter().all(|r| r.pickups.len() <= 1));
    }
}
