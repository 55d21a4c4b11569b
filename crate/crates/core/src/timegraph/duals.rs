use alloc::vec;
use alloc::vec::Vec;

use crate::model::{Column, Instance, SpaceEdge, SpaceTime, Time};

/// Dual values of the master rows. Rows that no column touches keep 0.
///
/// Under the minimization-with-`<=`-rows convention item, time, position
/// and edge duals are nonpositive; extant-robot duals are free.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    width: u32,
    height: u32,
    horizon: u32,
    pub item: Vec<f64>,
    /// Indexed by `t - 1`.
    pub time: Vec<f64>,
    pub extant: Vec<f64>,
    position: Vec<f64>,
    edge: Vec<f64>,
}

impl DualSolution {
    pub fn zeros(instance: &Instance) -> Self {
        let cells = (instance.width * instance.height) as usize;
        let h = instance.horizon as usize;
        Self {
            width: instance.width,
            height: instance.height,
            horizon: instance.horizon,
            item: vec![0.0; instance.items.len()],
            time: vec![0.0; h],
            extant: vec![0.0; instance.extant_robots.len()],
            position: vec![0.0; cells * h],
            edge: vec![0.0; 2 * cells * h],
        }
    }

    fn cell_id(&self, x: i32, y: i32) -> Option<usize> {
        (x >= 0 && y >= 0 && (x as u32) < self.width && (y as u32) < self.height)
            .then(|| y as usize * self.width as usize + x as usize)
    }

    fn position_slot(&self, p: SpaceTime) -> Option<usize> {
        if p.time < 1 || p.time > self.horizon {
            return None;
        }
        let id = self.cell_id(p.cell.x, p.cell.y)?;
        Some(id * self.horizon as usize + (p.time - 1) as usize)
    }

    fn edge_slot(&self, e: SpaceEdge) -> Option<usize> {
        if e.time < 1 || e.time > self.horizon || !e.a.is_adjacent(e.b) {
            return None;
        }
        let id = self.cell_id(e.a.x, e.a.y)?;
        let axis = usize::from(e.a.x == e.b.x);
        Some((2 * id + axis) * self.horizon as usize + (e.time - 1) as usize)
    }

    pub fn time_dual(&self, t: Time) -> f64 {
        self.time.get((t as usize).wrapping_sub(1)).copied().unwrap_or(0.0)
    }

    pub fn position(&self, p: SpaceTime) -> f64 {
        self.position_slot(p).map_or(0.0, |k| self.position[k])
    }

    pub fn set_position(&mut self, p: SpaceTime, value: f64) {
        if let Some(k) = self.position_slot(p) {
            self.position[k] = value;
        }
    }

    pub fn edge(&self, e: SpaceEdge) -> f64 {
        self.edge_slot(e).map_or(0.0, |k| self.edge[k])
    }

    pub fn set_edge(&mut self, e: SpaceEdge, value: f64) {
        if let Some(k) = self.edge_slot(e) {
            self.edge[k] = value;
        }
    }

    /// `cost - sum of duals over the rows the column touches`.
    pub fn reduced_cost(&self, col: &Column) -> f64 {
        let mut rc = col.cost;
        for &d in &col.items {
            rc -= self.item[d];
        }
        if let Some(r) = col.owner {
            rc -= self.extant[r];
        }
        for p in &col.positions {
            rc -= self.time_dual(p.time) + self.position(*p);
        }
        for e in &col.edges {
            rc -= self.edge(*e);
        }
        rc
    }

    /// Copy with item and extant duals cleared: the part that shapes paths.
    pub fn frozen_part(&self) -> Self {
        let mut f = self.clone();
        f.item.iter_mut().for_each(|v| *v = 0.0);
        f.extant.iter_mut().for_each(|v| *v = 0.0);
        f
    }

    /// Copy with position and edge duals cleared.
    pub fn without_collisions(&self) -> Self {
        let mut f = self.clone();
        f.position.iter_mut().for_each(|v| *v = 0.0);
        f.edge.iter_mut().for_each(|v| *v = 0.0);
        f
    }

    /// True when the time, position and edge duals are identical.
    pub fn same_frozen_part(&self, other: &Self) -> bool {
        self.time == other.time && self.position == other.position && self.edge == other.edge
    }
}
