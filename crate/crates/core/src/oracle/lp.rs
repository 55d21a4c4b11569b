use alloc::vec::Vec;

use crate::error::Result;
use crate::master::RestrictedMaster;
use crate::model::{Column, Instance, SpaceEdge};
use crate::timegraph::DualSolution;

/// Reduced cost recomputed from the route itself rather than from the
/// column's cached incidence sets.
pub fn oracle_reduced_cost(duals: &DualSolution, col: &Column) -> f64 {
    let r = &col.route;
    let mut rc = col.cost;
    for p in &r.pickups {
        rc -= duals.item[p.item];
    }
    if let Some(o) = r.owner {
        rc -= duals.extant[o];
    }
    for p in &r.positions {
        rc -= duals.time_dual(p.time) + duals.position(*p);
    }
    for w in r.positions.windows(2) {
        if w[0].cell != w[1].cell {
            rc -= duals.edge(SpaceEdge::new(w[0].cell, w[1].cell, w[0].time));
        }
    }
    rc
}

/// Cheapest column under `duals`, with its index.
pub fn min_reduced_cost(columns: &[Column], duals: &DualSolution) -> Option<(f64, usize)> {
    columns
        .iter()
        .enumerate()
        .map(|(k, c)| (oracle_reduced_cost(duals, c), k))
        .min_by(|a, b| a.0.total_cmp(&b.0))
}

/// Optimum of the LP relaxation over all `columns`.
///
/// Solved by column generation whose pricing scans the whole list, so the
/// result equals the LP with every column present.
pub fn full_lp(instance: &Instance, columns: &[Column], collisions: bool) -> Result<f64> {
    const BATCH: usize = 200;
    let mut master = RestrictedMaster::new(instance, collisions, false);
    loop {
        let sol = master.solve()?;
        let mut entering: Vec<(f64, usize)> = columns
            .iter()
            .enumerate()
            .map(|(k, c)| (oracle_reduced_cost(&sol.duals, c), k))
            .filter(|&(rc, k)| rc < -1e-9 && !master.contains(&columns[k]))
            .collect();
        if entering.is_empty() {
            return Ok(sol.objective);
        }
        entering.sort_by(|a, b| a.0.total_cmp(&b.0));
        for &(_, k) in entering.iter().take(BATCH) {
            master.add_column(columns[k].clone());
        }
    }
}
