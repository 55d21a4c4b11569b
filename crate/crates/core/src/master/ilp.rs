use alloc::vec::Vec;

use super::lp::LinearProgram;
use super::{MasterColumn, RestrictedMaster};
use crate::error::{Error, Result};

const INT_TOL: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct IlpSolution {
    pub objective: f64,
    /// Master column indices with value one.
    pub selected: Vec<usize>,
    /// Surplus per item.
    pub surplus: Vec<f64>,
    /// False when the node limit stopped the search early.
    pub proven_optimal: bool,
    pub nodes: usize,
}

struct Search {
    integer: Vec<bool>,
    best: Option<(f64, Vec<f64>)>,
    nodes: usize,
    limit: usize,
}

impl Search {
    fn branch(&mut self, lp: &mut LinearProgram) -> Result<()> {
        if self.nodes >= self.limit {
            return Ok(());
        }
        self.nodes += 1;
        match lp.solve() {
            Ok(()) => {}
            Err(Error::Infeasible) => return Ok(()),
            Err(e) => return Err(e),
        }
        let obj = lp.objective();
        if self.best.as_ref().is_some_and(|b| obj >= b.0 - 1e-9) {
            return Ok(());
        }
        let mut pick: Option<(usize, f64)> = None;
        for (j, &int) in self.integer.iter().enumerate() {
            let x = lp.value(j);
            let frac = (x - libm::round(x)).abs();
            if int && frac > INT_TOL && pick.is_none_or(|(_, f)| frac > f + 1e-12) {
                pick = Some((j, frac));
            }
        }
        let Some((j, _)) = pick else {
            self.best = Some((obj, lp.values().to_vec()));
            return Ok(());
        };
        let x = lp.value(j);
        let (lo, hi) = lp.bounds(j);
        let snap = lp.snapshot();
        lp.set_bounds(j, libm::ceil(x), hi);
        self.branch(lp)?;
        lp.set_bounds(j, lo, libm::floor(x));
        lp.restore(&snap);
        self.branch(lp)?;
        lp.set_bounds(j, lo, hi);
        lp.restore(&snap);
        Ok(())
    }
}

pub(crate) struct Outcome {
    pub best: Option<(f64, Vec<f64>)>,
    pub nodes: usize,
    pub proven_optimal: bool,
}

/// Depth-first branch and bound over the flagged integer columns. The up
/// branch is explored first; the most fractional variable is branched on.
pub(crate) fn branch_and_bound(lp: &mut LinearProgram, integer: Vec<bool>, node_limit: usize) -> Result<Outcome> {
    let mut search = Search {
        integer,
        best: None,
        nodes: 0,
        limit: node_limit,
    };
    search.branch(lp)?;
    Ok(Outcome {
        proven_optimal: search.nodes < search.limit,
        best: search.best,
        nodes: search.nodes,
    })
}

/// Solves the master as a binary program by depth-first branch and bound,
/// with item surplus allowed at the cost of the item's reward.
pub fn solve_ilp(master: &RestrictedMaster, node_limit: usize) -> Result<IlpSolution> {
    let mut m = master.clone();
    m.add_surplus_columns();
    let mut lp = m.lp().clone();
    let mut integer = Vec::with_capacity(m.columns().len());
    for (j, c) in m.columns().iter().enumerate() {
        let binary = !matches!(c, MasterColumn::Surplus(_));
        if binary {
            lp.set_bounds(j, 0.0, 1.0);
        }
        integer.push(binary);
    }
    let outcome = branch_and_bound(&mut lp, integer, node_limit)?;
    let (objective, values) = outcome.best.ok_or(Error::Infeasible)?;
    let mut surplus = alloc::vec![0.0; m.instance().items.len()];
    let mut selected = Vec::new();
    for (j, c) in m.columns().iter().enumerate() {
        match c {
            MasterColumn::Surplus(d) => surplus[*d] = values[j],
            _ if values[j] > 0.5 => selected.push(j),
            _ => {}
        }
    }
    Ok(IlpSolution {
        objective,
        selected,
        surplus,
        proven_optimal: outcome.proven_optimal,
        nodes: outcome.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::tests::small_instance;
    use crate::model::{make_column, Cell, Pickup, Route};

    fn c(x: i32, y: i32) -> Cell {
        Cell::new(x, y)
    }

    #[test]
    fn overlapping_pickups_pay_surplus() {
        let mut inst = small_instance();
        inst.extant_robots.clear();
        inst.fleet_size = 2;
        // two trips that both pick item 0; collisions are not modeled here
        let a = Route::from_cells(1, &[c(0, 0), c(1, 0), c(2, 0), c(1, 0), c(0, 0)], alloc::vec![Pickup { item: 0, time: 3 }], None);
        let b = Route::from_cells(2, &[c(0, 0), c(1, 0), c(2, 0), c(1, 0), c(0, 0)], alloc::vec![Pickup { item: 0, time: 4 }], None);
        let mut m = RestrictedMaster::new(&inst, false, false);
        m.add_column(make_column(&a, &inst).unwrap());
        m.add_column(make_column(&b, &inst).unwrap());
        let lp = m.solve().unwrap();
        let ilp = solve_ilp(&m, 1000).unwrap();
        assert!(ilp.proven_optimal);
        // the second trip costs 9 once the reward is paid back, so it is skipped
        assert_eq!(ilp.objective, -41.0);
        assert_eq!(ilp.selected.len(), 1);
        assert!(ilp.objective >= lp.objective - 1e-9);
    }

    #[test]
    fn knapsack_needs_branching() {
        // max 8a + 11b + 6c + 4d subject to 5a + 7b + 4c + 3d <= 14
        let mut lp = LinearProgram::new();
        let r = lp.add_row(super::super::RowKind::Le, 14.0);
        for (v, w) in [(8.0, 5.0), (11.0, 7.0), (6.0, 4.0), (4.0, 3.0)] {
            lp.add_column(-v, 0.0, 1.0, alloc::vec![(r, w)]);
        }
        lp.solve().unwrap();
        assert!((lp.objective() + 22.0).abs() < 1e-9);
        let out = branch_and_bound(&mut lp, alloc::vec![true; 4], 1000).unwrap();
        let (obj, x) = out.best.unwrap();
        assert!(out.proven_optimal && out.nodes > 1);
        assert!((obj + 21.0).abs() < 1e-9);
        let x: Vec<i64> = x.iter().map(|v| v.round() as i64).collect();
        assert_eq!(x, alloc::vec![0, 1, 1, 1]);
    }
}
