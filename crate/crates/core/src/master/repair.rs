use alloc::vec::Vec;

use crate::model::Route;

/// Drops duplicate pickups so every item is serviced at most once.
///
/// Keeping an item on any one of its routes saves the same reward, so the
/// route picking it up first keeps it (lowest index on ties) and the others
/// lose the pickup. Positions are untouched; only the item term of the
/// affected routes' costs changes. Returns the number of removed pickups.
pub fn repair(routes: &mut [Route]) -> usize {
    let mut keeper: Vec<(usize, u32, usize)> = Vec::new(); // (item, time, route)
    for (k, r) in routes.iter().enumerate() {
        for p in &r.pickups {
            match keeper.iter_mut().find(|e| e.0 == p.item) {
                Some(e) if (p.time, k) < (e.1, e.2) => *e = (p.item, p.time, k),
                Some(_) => {}
                None => keeper.push((p.item, p.time, k)),
            }
        }
    }
    let mut removed = 0;
    for (k, r) in routes.iter_mut().enumerate() {
        let before = r.pickups.len();
        r.pickups.retain(|p| keeper.iter().any(|e| e.0 == p.item && e.2 == k));
        removed += before - r.pickups.len();
    }
    removed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::instance::tests::small_instance;
    use crate::model::{route_cost, Cell, Pickup};

    fn c(x: i32, y: i32) -> Cell {
        Cell::new(x, y)
    }

    #[test]
    fn unique_pickups_are_untouched() {
        let mut routes = alloc::vec![Route::from_cells(1, &[c(0, 0), c(1, 0), c(2, 0), c(1, 0), c(0, 0)], alloc::vec![Pickup { item: 0, time: 3 }], None)];
        let before = routes.clone();
        assert_eq!(repair(&mut routes), 0);
        assert_eq!(routes, before);
    }

    #[test]
    fn later_duplicate_loses_the_reward() {
        let inst = small_instance();
        let cells = [c(0, 0), c(1, 0), c(2, 0), c(1, 0), c(0, 0)];
        let mut routes = alloc::vec![
            Route::from_cells(2, &cells, alloc::vec![Pickup { item: 0, time: 4 }], None),
            Route::from_cells(1, &cells, alloc::vec![Pickup { item: 0, time: 3 }], None),
        ];
        let cost_before = route_cost(&routes[0], &inst).unwrap();
        assert_eq!(repair(&mut routes), 1);
        assert!(routes[0].pickups.is_empty());
        assert_eq!(routes[1].pickups.len(), 1);
        assert_eq!(route_cost(&routes[0], &inst).unwrap(), cost_before + 50.0);
    }
}
