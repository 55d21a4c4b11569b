mod common;

use std::collections::BTreeMap;

use common::tiny_instance;
use mrp_core::coarsen::{init_partition, ItemOffsets};
use mrp_core::master::{LinearProgram, MasterColumn, RestrictedMaster, RowKind};
use mrp_core::pricing::{price, PricingConfig};
use mrp_core::timegraph::CoarseDistanceTable;
use mrp_core::{make_column, solve, Cell, DualSolution, Instance, SolverConfig, SpaceEdge, SpaceTime};
use proptest::prelude::*;

/// Plain column generation with a fresh table every round. Returns the
/// final master and the duals of every round.
fn generate(inst: &Instance, doi: bool) -> (RestrictedMaster, f64, Vec<DualSolution>) {
    let mut master = RestrictedMaster::new(inst, true, doi);
    let mut trace = Vec::new();
    loop {
        let rmp = master.solve().unwrap();
        let table = CoarseDistanceTable::build(inst, &rmp.duals);
        let offsets = ItemOffsets::new(inst, &rmp.duals);
        let res = price(inst, &table, &offsets, &mut init_partition(inst), &PricingConfig::default()).unwrap();
        let mut added = false;
        for r in &res.routes {
            added |= master.add_column(make_column(r, inst).unwrap());
        }
        trace.push(rmp.duals);
        if !added {
            return (master, rmp.objective, trace);
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Row {
    Item(usize),
    Extant(usize),
    Time(u32),
    Position(SpaceTime),
    Edge(SpaceEdge),
}

/// The same columns with every row of the formulation present, whether
/// any column touches it or not.
fn all_rows_lp(master: &RestrictedMaster) -> f64 {
    let inst = master.instance();
    let grid = inst.grid();
    let mut lp = LinearProgram::new();
    let mut rows = BTreeMap::new();
    let mut add = |lp: &mut LinearProgram, key: Row, kind, rhs| {
        rows.insert(key, lp.add_row(kind, rhs));
    };
    for d in 0..inst.items.len() {
        add(&mut lp, Row::Item(d), RowKind::Le, 1.0);
    }
    for r in 0..inst.extant_robots.len() {
        add(&mut lp, Row::Extant(r), RowKind::Eq, 1.0);
    }
    for t in inst.times() {
        add(&mut lp, Row::Time(t), RowKind::Le, f64::from(inst.fleet_size));
        for y in 0..inst.height as i32 {
            for x in 0..inst.width as i32 {
                let c = Cell::new(x, y);
                if !grid.is_free(c) {
                    continue;
                }
                add(&mut lp, Row::Position(SpaceTime::new(c, t)), RowKind::Le, 1.0);
                for n in [Cell::new(x + 1, y), Cell::new(x, y + 1)] {
                    if t < inst.horizon && grid.is_free(n) {
                        add(&mut lp, Row::Edge(SpaceEdge::new(c, n, t)), RowKind::Le, 1.0);
                    }
                }
            }
        }
    }
    for col in master.columns() {
        match col {
            MasterColumn::Dummy(r) => {
                lp.add_column(inst.dummy_cost(), 0.0, f64::INFINITY, vec![(rows[&Row::Extant(*r)], 1.0)]);
            }
            MasterColumn::Surplus(_) => unreachable!(),
            MasterColumn::Route(c) => {
                let mut e: Vec<(usize, f64)> = c.items.iter().map(|&d| (rows[&Row::Item(d)], 1.0)).collect();
                if let Some(r) = c.owner {
                    e.push((rows[&Row::Extant(r)], 1.0));
                }
                for p in &c.positions {
                    e.push((rows[&Row::Time(p.time)], 1.0));
                    e.push((rows[&Row::Position(*p)], 1.0));
                }
                for x in &c.edges {
                    e.push((rows[&Row::Edge(*x)], 1.0));
                }
                lp.add_column(c.cost, 0.0, f64::INFINITY, e);
            }
        }
    }
    lp.solve().unwrap();
    lp.objective()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn doi_keeps_the_bound_and_bounds_item_duals(seed in any::<u64>()) {
        let inst = tiny_instance(seed);
        let (_, plain, _) = generate(&inst, false);
        let (_, doi, trace) = generate(&inst, true);
        prop_assert!((plain - doi).abs() < 1e-6, "plain {plain} doi {doi}");
        for duals in &trace {
            for (d, item) in inst.items.iter().enumerate() {
                prop_assert!(item.reward_cost <= duals.item[d] + 1e-9);
            }
        }
    }

    #[test]
    fn omitted_rows_do_not_change_the_lp(seed in any::<u64>()) {
        let inst = tiny_instance(seed);
        let (master, objective, _) = generate(&inst, false);
        prop_assert!((all_rows_lp(&master) - objective).abs() < 1e-6);
    }

    #[test]
    fn engine_bound_never_rises(seed in any::<u64>()) {
        let inst = tiny_instance(seed);
        let sol = solve(&inst, &SolverConfig::default()).unwrap();
        for w in sol.log.windows(2) {
            prop_assert!(w[1].rmp_objective <= w[0].rmp_objective + 1e-9);
        }
        prop_assert!(sol.log.last().unwrap().rmp_objective >= sol.lp_bound - 1e-9);
    }
}
