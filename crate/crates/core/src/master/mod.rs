//! Restricted master problem over the generated columns.
//!
//! Item and extant-robot rows always exist. Time, position and edge rows
//! are created the first time a column touches them; a row no column
//! touches is slack with a zero dual, so leaving it out changes nothing.

mod ilp;
mod lp;
mod repair;

pub use ilp::{solve_ilp, IlpSolution};
pub use lp::{BasisSnapshot, LinearProgram, RowKind};
pub use repair::repair;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::Result;
use crate::model::{Column, ColumnKey, Instance, SpaceEdge, SpaceTime, Time};
use crate::timegraph::DualSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum RowKey {
    Item(usize),
    Extant(usize),
    Time(Time),
    Position(SpaceTime),
    Edge(SpaceEdge),
}

#[derive(Debug, Clone)]
pub enum MasterColumn {
    Route(Column),
    /// Placeholder that satisfies the row of an extant robot.
    Dummy(usize),
    /// Surplus on an item row, priced back at the item's reward.
    Surplus(usize),
}

#[derive(Debug, Clone)]
pub struct RmpSolution {
    pub objective: f64,
    /// Value of every master column, aligned with [`RestrictedMaster::columns`].
    pub values: Vec<f64>,
    pub duals: DualSolution,
}

#[derive(Debug, Clone)]
pub struct RestrictedMaster {
    instance: Instance,
    collisions: bool,
    lp: LinearProgram,
    rows: BTreeMap<RowKey, usize>,
    row_keys: Vec<RowKey>,
    columns: Vec<MasterColumn>,
    keys: BTreeSet<ColumnKey>,
}

impl RestrictedMaster {
    /// Master holding one dummy per extant robot. With `collisions` off,
    /// position and edge rows are never created. With `doi` on, surplus
    /// columns bound every item dual from below by the item's reward.
    pub fn new(instance: &Instance, collisions: bool, doi: bool) -> Self {
        let mut m = Self {
            instance: instance.clone(),
            collisions,
            lp: LinearProgram::new(),
            rows: BTreeMap::new(),
            row_keys: Vec::new(),
            columns: Vec::new(),
            keys: BTreeSet::new(),
        };
        for d in 0..instance.items.len() {
            m.row(RowKey::Item(d));
        }
        for r in 0..instance.extant_robots.len() {
            let i = m.row(RowKey::Extant(r));
            let j = m.lp.add_column(instance.dummy_cost(), 0.0, f64::INFINITY, alloc::vec![(i, 1.0)]);
            m.lp.crash_basic(j, i);
            m.columns.push(MasterColumn::Dummy(r));
        }
        if doi {
            m.add_surplus_columns();
        }
        m
    }

    fn row(&mut self, key: RowKey) -> usize {
        if let Some(&i) = self.rows.get(&key) {
            return i;
        }
        let (kind, rhs) = match key {
            RowKey::Extant(_) => (RowKind::Eq, 1.0),
            RowKey::Time(_) => (RowKind::Le, f64::from(self.instance.fleet_size)),
            _ => (RowKind::Le, 1.0),
        };
        let i = self.lp.add_row(kind, rhs);
        self.rows.insert(key, i);
        self.row_keys.push(key);
        i
    }

    pub(crate) fn add_surplus_columns(&mut self) {
        if self.columns.iter().any(|c| matches!(c, MasterColumn::Surplus(_))) {
            return;
        }
        for d in 0..self.instance.items.len() {
            let i = self.rows[&RowKey::Item(d)];
            let cost = -self.instance.items[d].reward_cost;
            self.lp.add_column(cost, 0.0, f64::INFINITY, alloc::vec![(i, -1.0)]);
            self.columns.push(MasterColumn::Surplus(d));
        }
    }

    /// Rows a route column touches, with unit coefficients.
    fn entries(&mut self, col: &Column) -> Vec<(usize, f64)> {
        let mut keys: Vec<RowKey> = col.items.iter().map(|&d| RowKey::Item(d)).collect();
        if let Some(r) = col.owner {
            keys.push(RowKey::Extant(r));
        }
        keys.extend(col.positions.iter().map(|p| RowKey::Time(p.time)));
        if self.collisions {
            keys.extend(col.positions.iter().map(|&p| RowKey::Position(p)));
            keys.extend(col.edges.iter().map(|&e| RowKey::Edge(e)));
        }
        keys.into_iter().map(|k| (self.row(k), 1.0)).collect()
    }

    /// Adds a route column; returns false if an identical one is present.
    pub fn add_column(&mut self, col: Column) -> bool {
        if !self.keys.insert(col.key()) {
            return false;
        }
        let entries = self.entries(&col);
        self.lp.add_column(col.cost, 0.0, f64::INFINITY, entries);
        self.columns.push(MasterColumn::Route(col));
        true
    }

    pub fn contains(&self, col: &Column) -> bool {
        self.keys.contains(&col.key())
    }

    pub fn columns(&self) -> &[MasterColumn] {
        &self.columns
    }

    pub fn num_route_columns(&self) -> usize {
        self.keys.len()
    }

    pub fn num_rows(&self) -> usize {
        self.row_keys.len()
    }

    pub fn row_keys(&self) -> &[RowKey] {
        &self.row_keys
    }

    pub fn instance(&self) -> &Instance {
        &self.instance
    }

    pub fn collisions(&self) -> bool {
        self.collisions
    }

    pub(crate) fn lp(&self) -> &LinearProgram {
        &self.lp
    }

    pub fn solve(&mut self) -> Result<RmpSolution> {
        self.lp.solve()?;
        let y = self.lp.duals();
        let mut duals = DualSolution::zeros(&self.instance);
        for (key, &v) in self.row_keys.iter().zip(&y) {
            match *key {
                RowKey::Item(d) => duals.item[d] = v,
                RowKey::Extant(r) => duals.extant[r] = v,
                RowKey::Time(t) => duals.time[t as usize - 1] = v,
                RowKey::Position(p) => duals.set_position(p, v),
                RowKey::Edge(e) => duals.set_edge(e, v),
            }
        }
        Ok(RmpSolution {
            objective: self.lp.objective(),
            values: self.lp.values().to_vec(),
            duals,
        })
    }

    /// Text in CPLEX LP format: minimize, one constraint per row, column
    /// bounds, variables named `g<j>`.
    pub fn to_lp_format(&self) -> String {
        let mut s = String::from("Minimize\n obj:");
        for j in 0..self.lp.num_cols() {
            let _ = write!(s, " {} g{j}", signed(self.lp.cost(j)));
        }
        s.push_str("\nSubject To\n");
        for (i, key) in self.row_keys.iter().enumerate() {
            let _ = write!(s, " {}:", row_name(key));
            let mut empty = true;
            for j in 0..self.lp.num_cols() {
                for &(r, a) in self.lp.column(j) {
                    if r == i {
                        let _ = write!(s, " {} g{j}", signed(a));
                        empty = false;
                    }
                }
            }
            if empty {
                s.push_str(" 0 g0");
            }
            let op = match self.lp.row_kind(i) {
                RowKind::Le => "<=",
                RowKind::Eq => "=",
            };
            let _ = writeln!(s, " {op} {}", self.lp.rhs(i));
        }
        s.push_str("Bounds\n");
        for j in 0..self.lp.num_cols() {
            let _ = writeln!(s, " g{j} >= 0");
        }
        s.push_str("End\n");
        s
    }
}

fn signed(v: f64) -> String {
    if v < 0.0 {
        alloc::format!("- {}", -v)
    } else {
        alloc::format!("+ {v}")
    }
}

fn row_name(key: &RowKey) -> String {
    match key {
        RowKey::Item(d) => alloc::format!("item_{d}"),
        RowKey::Extant(r) => alloc::format!("extant_{r}"),
        RowKey::Time(t) => alloc::format!("time_{t}"),
        RowKey::Position(p) => alloc::format!("pos_{}_{}_{}", p.cell.x, p.cell.y, p.time),
        RowKey::Edge(e) => alloc::format!("edge_{}_{}_{}_{}_{}", e.a.x, e.a.y, e.b.x, e.b.y, e.time),
    }
}
