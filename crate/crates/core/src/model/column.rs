use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::grid::Cell;
use super::instance::{Instance, Time};
use super::route::{check_route, cost_unchecked, Route, SpaceTime};
use crate::error::Result;

/// Undirected space edge between adjacent cells, crossed between `time`
/// and `time + 1` in either direction. `a < b` always.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpaceEdge {
    pub a: Cell,
    pub b: Cell,
    pub time: Time,
}

impl SpaceEdge {
    pub fn new(u: Cell, v: Cell, time: Time) -> Self {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        Self { a, b, time }
    }
}

/// A route together with its constraint-row incidence and cost.
#[derive(Debug, Clone)]
pub struct Column {
    pub route: Route,
    pub cost: f64,
    /// Serviced items, sorted.
    pub items: Vec<usize>,
    pub owner: Option<usize>,
    /// Occupied positions, one per active time, in time order.
    pub positions: Vec<SpaceTime>,
    /// Crossed edges in time order.
    pub edges: Vec<SpaceEdge>,
}

/// Identity of a column: everything except the route's pickup times.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColumnKey {
    pub owner: Option<usize>,
    pub items: Vec<usize>,
    pub positions: Vec<SpaceTime>,
}

impl Column {
    /// Active times `start..=end`.
    pub fn times(&self) -> RangeInclusive<Time> {
        self.start()..=self.end()
    }

    pub fn start(&self) -> Time {
        self.positions[0].time
    }

    pub fn end(&self) -> Time {
        self.positions[self.positions.len() - 1].time
    }

    pub fn key(&self) -> ColumnKey {
        ColumnKey {
            owner: self.owner,
            items: self.items.clone(),
            positions: self.positions.clone(),
        }
    }

    pub fn covers_item(&self, d: usize) -> bool {
        self.items.binary_search(&d).is_ok()
    }
}

impl PartialEq for Column {
    fn eq(&self, other: &Self) -> bool {
        self.owner == other.owner
            && self.items == other.items
            && self.positions == other.positions
            && self.edges == other.edges
            && self.cost == other.cost
    }
}

/// Derives the indicator sets and cost of a valid route.
pub fn make_column(route: &Route, instance: &Instance) -> Result<Column> {
    check_route(route, instance, &instance.grid())?;
    Ok(column_unchecked(route, instance))
}

pub(crate) fn column_unchecked(route: &Route, instance: &Instance) -> Column {
    let mut items: Vec<usize> = route.pickups.iter().map(|p| p.item).collect();
    items.sort_unstable();
    let edges = route
        .positions
        .windows(2)
        .filter(|w| w[0].cell != w[1].cell)
        .map(|w| SpaceEdge::new(w[0].cell, w[1].cell, w[0].time))
        .collect();
    Column {
        route: route.clone(),
        cost: cost_unchecked(route, instance),
        items,
        owner: route.owner,
        positions: route.positions.clone(),
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::tests::small_instance;
    use crate::model::Pickup;
    use alloc::vec;

    fn c(x: i32, y: i32) -> Cell {
        Cell::new(x, y)
    }

    #[test]
    fn waiting_route_has_no_edges() {
        let inst = small_instance();
        let route = Route::from_cells(3, &[c(0, 0); 4], vec![], None);
        let col = make_column(&route, &inst).unwrap();
        assert!(col.edges.is_empty());
        assert_eq!(col.positions.len(), 4);
        assert!(col.positions.iter().all(|p| p.cell == c(0, 0)));
        assert_eq!(col.times(), 3..=6);
        assert_eq!(col.cost, 4.0);
    }

    #[test]
    fn crossing_records_unordered_edge() {
        let inst = small_instance();
        let route = Route::from_cells(2, &[c(0, 0), c(1, 0), c(0, 0)], vec![], None);
        let col = make_column(&route, &inst).unwrap();
        assert_eq!(col.edges, vec![SpaceEdge::new(c(0, 0), c(1, 0), 2), SpaceEdge::new(c(1, 0), c(0, 0), 3)]);
        assert_eq!(col.edges[1].a, c(0, 0));
    }

    #[test]
    fn extant_route_owns_time_one() {
        let inst = small_instance();
        let route = Route::from_cells(1, &[c(1, 1), c(1, 0), c(0, 0)], vec![], Some(0));
        let col = make_column(&route, &inst).unwrap();
        assert_eq!(col.owner, Some(0));
        assert!(col.times().contains(&1));
    }

    #[test]
    fn pickup_time_does_not_change_identity() {
        let inst = small_instance();
        let cells = [c(0, 0), c(1, 0), c(2, 0), c(2, 0), c(1, 0), c(0, 0)];
        let a = make_column(&Route::from_cells(1, &cells, vec![Pickup { item: 0, time: 3 }], None), &inst).unwrap();
        let b = make_column(&Route::from_cells(1, &cells, vec![Pickup { item: 0, time: 4 }], None), &inst).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.key(), b.key());
        assert_eq!(make_column(&a.route, &inst).unwrap(), a);
    }
}
