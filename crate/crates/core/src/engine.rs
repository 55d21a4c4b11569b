//! Column generation driver.
//!
//! Each iteration solves the restricted master and prices against its
//! duals. The expensive part of pricing, the coarse distance table, depends
//! only on the time, position and edge duals and is rebuilt every few
//! iterations; in between, only the item and extant-robot duals are
//! refreshed. Columns found with a stale table are re-checked against the
//! current duals before they are added, and the loop only stops once a
//! pricing pass on an up-to-date table finds nothing.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::clock::Stopwatch;
use crate::coarsen::{init_partition, ItemOffsets, TimePartition};
use crate::error::{Error, Result};
use crate::master::{repair, solve_ilp, MasterColumn, RestrictedMaster};
use crate::model::{make_column, route_cost, validate_instance, Cell, Instance, Route, SpaceTime, Time};
use crate::pricing::{price, PricingConfig};
use crate::timegraph::{CoarseDistanceTable, DualSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CollisionMode {
    Full,
    /// No position or edge rows: routes may collide.
    NoCollision,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Iterations between rebuilds of the coarse distance table.
    pub full_dual_refresh_period: usize,
    pub columns_per_round: usize,
    /// Keep item duals at or above the item rewards during generation.
    pub doi_dual_mode: bool,
    pub collision_mode: CollisionMode,
    /// Pricing stops the loop when nothing beats this reduced cost.
    pub convergence_tol: f64,
    pub max_iterations: usize,
    pub ilp_node_limit: usize,
    pub dominance: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            full_dual_refresh_period: 3,
            columns_per_round: 20,
            doi_dual_mode: false,
            collision_mode: CollisionMode::Full,
            convergence_tol: 1e-6,
            max_iterations: 500,
            ilp_node_limit: 200_000,
            dominance: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationLog {
    pub iteration: usize,
    pub rmp_objective: f64,
    pub best_reduced_cost: f64,
    pub columns_added: usize,
    /// Whether the last pricing pass of the iteration used a current table.
    pub fresh: bool,
    pub elapsed_secs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind"))]
pub enum Conflict {
    /// Two routes on one cell at one time.
    Vertex { routes: (usize, usize), at: SpaceTime },
    /// Two routes crossing the same edge between `time` and `time + 1`.
    Edge {
        routes: (usize, usize),
        a: Cell,
        b: Cell,
        time: Time,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub routes: Vec<Route>,
    /// Cost of the repaired integral solution.
    pub ilp_objective: f64,
    /// Final restricted master objective.
    pub lp_bound: f64,
    pub relative_gap: f64,
    pub iterations: usize,
    /// False when the iteration cap ended generation early.
    pub converged: bool,
    /// False when the branch and bound node limit was hit.
    pub ilp_optimal: bool,
    pub wall_secs: f64,
    pub log: Vec<IterationLog>,
    /// Some two non-extant routes are active at disjoint times.
    pub reuse: bool,
    pub num_columns: usize,
    /// Pickups dropped because an item was covered twice.
    pub repaired_pickups: usize,
    pub conflicts: Vec<Conflict>,
    /// Duals of the last restricted master solve.
    pub final_duals: DualSolution,
}

/// `|ub - lb| / |lb|`, with both bounds near zero counting as no gap.
pub fn compute_gap(ub: f64, lb: f64) -> Result<f64> {
    let tol = 1e-6 * lb.abs().max(1.0);
    if lb > ub + tol {
        return Err(Error::BoundOrder { lb, ub });
    }
    if lb.abs() < 1e-12 {
        return Ok(if (ub - lb).abs() < 1e-12 { 0.0 } else { f64::INFINITY });
    }
    Ok((ub - lb).abs() / lb.abs())
}

/// Whether some two routes not owned by an extant robot have disjoint
/// active time ranges.
pub fn reuse_flag(routes: &[Route]) -> bool {
    let spans: Vec<(Time, Time)> = routes
        .iter()
        .filter(|r| r.owner.is_none())
        .map(|r| (r.start_time, r.end_time()))
        .collect();
    spans
        .iter()
        .enumerate()
        .any(|(i, a)| spans[i + 1..].iter().any(|b| a.1 < b.0 || b.1 < a.0))
}

/// Vertex conflicts and edge conflicts (swaps or shared crossings) among
/// the given routes.
pub fn find_conflicts(routes: &[Route]) -> Vec<Conflict> {
    let mut out = Vec::new();
    for i in 0..routes.len() {
        for j in i + 1..routes.len() {
            let (a, b) = (&routes[i], &routes[j]);
            for p in &a.positions {
                if b.cell_at(p.time) == Some(p.cell) {
                    out.push(Conflict::Vertex { routes: (i, j), at: *p });
                }
            }
            for w in a.positions.windows(2) {
                let (u, v, t) = (w[0].cell, w[1].cell, w[0].time);
                if u == v {
                    continue;
                }
                let (Some(bu), Some(bv)) = (b.cell_at(t), b.cell_at(t + 1)) else {
                    continue;
                };
                if (bu == u && bv == v) || (bu == v && bv == u) {
                    let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
                    out.push(Conflict::Edge {
                        routes: (i, j),
                        a: lo,
                        b: hi,
                        time: t,
                    });
                }
            }
        }
    }
    out
}

struct Pricer {
    table: CoarseDistanceTable,
    partition: TimePartition,
}

impl Pricer {
    fn build(instance: &Instance, duals: &DualSolution) -> Self {
        Self {
            table: CoarseDistanceTable::build(instance, duals),
            partition: init_partition(instance),
        }
    }
}

/// Runs column generation, then the final integer program and repair.
pub fn solve(instance: &Instance, config: &SolverConfig) -> Result<Solution> {
    solve_with_master(instance, config).map(|(s, _)| s)
}

/// Like [`solve`], also handing back the final restricted master.
pub fn solve_with_master(instance: &Instance, config: &SolverConfig) -> Result<(Solution, RestrictedMaster)> {
    let problems = validate_instance(instance);
    if !problems.is_empty() {
        return Err(Error::InvalidInstance(problems.join("; ")));
    }
    let clock = Stopwatch::start();
    let collisions = config.collision_mode == CollisionMode::Full;
    let mut master = RestrictedMaster::new(instance, collisions, config.doi_dual_mode);
    let pricing = PricingConfig {
        max_columns: config.columns_per_round,
        dominance: config.dominance,
    };
    let period = config.full_dual_refresh_period.max(1);
    let mut pricer: Option<Pricer> = None;
    let mut log = Vec::new();
    let mut converged = false;
    let mut lp_bound;
    let mut final_duals;
    let mut iteration = 0;
    loop {
        let rmp = master.solve()?;
        lp_bound = rmp.objective;
        final_duals = rmp.duals;
        if iteration >= config.max_iterations {
            break;
        }
        let duals = &final_duals;
        if iteration % period == 0 {
            pricer = None;
        }
        iteration += 1;
        let mut added = 0;
        let (best, fresh) = loop {
            let p = pricer.get_or_insert_with(|| Pricer::build(instance, duals));
            let fresh = p.table.frozen_duals().same_frozen_part(duals);
            let offsets = ItemOffsets::new(instance, duals);
            let result = price(instance, &p.table, &offsets, &mut p.partition, &pricing)?;
            for route in &result.routes {
                let col = make_column(route, instance)?;
                if duals.reduced_cost(&col) < -1e-9 && master.add_column(col) {
                    added += 1;
                }
            }
            if added > 0 || fresh {
                break (result.best_reduced_cost, fresh);
            }
            pricer = None;
        };
        log.push(IterationLog {
            iteration,
            rmp_objective: lp_bound,
            best_reduced_cost: best,
            columns_added: added,
            fresh,
            elapsed_secs: clock.elapsed_secs(),
        });
        if added == 0 {
            debug_assert!(best >= -config.convergence_tol || !fresh);
            converged = true;
            break;
        }
    }

    let ilp = solve_ilp(&master, config.ilp_node_limit)?;
    let mut routes = Vec::new();
    for &j in &ilp.selected {
        match &master.columns()[j] {
            MasterColumn::Route(c) => routes.push(c.route.clone()),
            MasterColumn::Dummy(r) => return Err(Error::ExtantUnroutable(*r)),
            MasterColumn::Surplus(_) => {}
        }
    }
    let repaired_pickups = repair(&mut routes);
    let mut ilp_objective = 0.0;
    for r in &routes {
        ilp_objective += route_cost(r, instance).map_err(|e| Error::InvalidRoute(e.to_string()))?;
    }
    let relative_gap = compute_gap(ilp_objective, lp_bound)?;
    let conflicts = find_conflicts(&routes);
    let solution = Solution {
        reuse: reuse_flag(&routes),
        routes,
        ilp_objective,
        lp_bound,
        relative_gap,
        iterations: iteration,
        converged,
        ilp_optimal: ilp.proven_optimal,
        wall_secs: clock.elapsed_secs(),
        log,
        num_columns: master.num_route_columns(),
        repaired_pickups,
        conflicts,
        final_duals,
    };
    Ok((solution, master))
}

/// Same pipeline without collision rows; the returned routes may collide
/// and [`Solution::conflicts`] lists where.
pub fn solve_no_collision(instance: &Instance, config: &SolverConfig) -> Result<Solution> {
    let config = SolverConfig {
        collision_mode: CollisionMode::NoCollision,
        ..config.clone()
    };
    solve(instance, &config)
}
