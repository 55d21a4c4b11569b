use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A grid cell, 0-based. Serialized as `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(from = "[i32; 2]", into = "[i32; 2]"))]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn is_adjacent(self, other: Cell) -> bool {
        (self.x - other.x).abs() + (self.y - other.y).abs() == 1
    }

    pub fn manhattan(self, other: Cell) -> u32 {
        (self.x - other.x).unsigned_abs() + (self.y - other.y).unsigned_abs()
    }
}

impl From<[i32; 2]> for Cell {
    fn from([x, y]: [i32; 2]) -> Self {
        Self { x, y }
    }
}

impl From<Cell> for [i32; 2] {
    fn from(c: Cell) -> Self {
        [c.x, c.y]
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Move offsets in the fixed order used everywhere a deterministic
/// neighbor order matters: east, west, south, north.
pub const DIRECTIONS: [(i32, i32); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// Obstacle mask over a `width x height` grid with row-major cell ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    width: u32,
    height: u32,
    blocked: Vec<bool>,
}

impl Grid {
    pub fn new(width: u32, height: u32, obstacles: &[Cell]) -> Self {
        let mut blocked = vec![false; (width * height) as usize];
        let mut grid = Self {
            width,
            height,
            blocked: Vec::new(),
        };
        for &c in obstacles {
            if let Some(id) = grid.id(c) {
                blocked[id] = true;
            }
        }
        grid.blocked = blocked;
        grid
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn num_cells(&self) -> usize {
        (self.width * self.height) as usize
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.x >= 0 && c.y >= 0 && (c.x as u32) < self.width && (c.y as u32) < self.height
    }

    /// Row-major id of an in-bounds cell.
    pub fn id(&self, c: Cell) -> Option<usize> {
        self.contains(c)
            .then(|| c.y as usize * self.width as usize + c.x as usize)
    }

    pub fn cell(&self, id: usize) -> Cell {
        let w = self.width as usize;
        Cell::new((id % w) as i32, (id / w) as i32)
    }

    pub fn is_free(&self, c: Cell) -> bool {
        self.id(c).is_some_and(|id| !self.blocked[id])
    }

    pub fn is_free_id(&self, id: usize) -> bool {
        !self.blocked[id]
    }

    /// Free neighbors of `c` in [`DIRECTIONS`] order.
    pub fn neighbors(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        DIRECTIONS
            .iter()
            .map(move |&(dx, dy)| Cell::new(c.x + dx, c.y + dy))
            .filter(move |&n| self.is_free(n))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.num_cells())
            .filter(move |&id| !self.blocked[id])
            .map(move |id| self.cell(id))
    }

    pub fn num_free(&self) -> usize {
        self.blocked.iter().filter(|b| !**b).count()
    }

    /// Hop distances from `from` through free cells, indexed by cell id.
    pub fn bfs(&self, from: Cell) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.num_cells()];
        let Some(start) = self.id(from).filter(|&id| !self.blocked[id]) else {
            return dist;
        };
        dist[start] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(c) = queue.pop_front() {
            let d = dist[self.id(c).unwrap()].unwrap();
            for n in self.neighbors(c) {
                let nid = self.id(n).unwrap();
                if dist[nid].is_none() {
                    dist[nid] = Some(d + 1);
                    queue.push_back(n);
                }
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbors_skip_obstacles_and_borders() {
        let g = Grid::new(3, 3, &[Cell::new(1, 0)]);
        let n: Vec<_> = g.neighbors(Cell::new(0, 0)).collect();
        assert_eq!(n, vec![Cell::new(0, 1)]);
        assert_eq!(g.neighbors(Cell::new(1, 1)).count(), 3);
    }

    #[test]
    fn bfs_goes_around_walls() {
        let g = Grid::new(3, 3, &[Cell::new(1, 0), Cell::new(1, 1)]);
        let d = g.bfs(Cell::new(0, 0));
        assert_eq!(d[g.id(Cell::new(2, 0)).unwrap()], Some(6));
        assert_eq!(d[g.id(Cell::new(1, 0)).unwrap()], None);
    }
}
