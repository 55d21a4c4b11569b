//! JSON and CSV files.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use mrp_core::engine::{Conflict, IterationLog};
use mrp_core::{Instance, Route, Solution};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// What `solve` writes: the routes and the run's statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub routes: Vec<Route>,
    pub objective: f64,
    pub lp_bound: f64,
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
    pub ilp_optimal: bool,
    pub wall_secs: f64,
    pub num_columns: usize,
    pub reuse: bool,
    pub repaired_pickups: usize,
    #[serde(default)]
    pub conflicts: Vec<Conflict>,
}

impl From<&Solution> for SolutionFile {
    fn from(s: &Solution) -> Self {
        Self {
            routes: s.routes.clone(),
            objective: s.ilp_objective,
            lp_bound: s.lp_bound,
            gap: s.relative_gap,
            iterations: s.iterations,
            converged: s.converged,
            ilp_optimal: s.ilp_optimal,
            wall_secs: s.wall_secs,
            num_columns: s.num_columns,
            reuse: s.reuse,
            repaired_pickups: s.repaired_pickups,
            conflicts: s.conflicts.clone(),
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json(value)).with_context(|| format!("writing {}", path.display()))
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    read_json(path)
}

/// Per-iteration log as CSV; the `fresh` column tells whether pricing ran
/// on an up-to-date distance table.
pub fn write_log(path: &Path, log: &[IterationLog]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for row in log {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
