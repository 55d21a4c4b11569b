use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{column_unchecked, Cell, Column, Instance, Pickup, Route, SpaceTime};

/// Largest walk search the enumerator accepts.
pub const STATE_GUARD: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Most items on one route.
    pub max_items: usize,
    /// Most steps beyond the shortest tour through the route's anchors.
    pub max_slack: u32,
}

impl EnumerationCaps {
    pub fn exhaustive(instance: &Instance) -> Self {
        Self {
            max_items: instance.items.len(),
            max_slack: instance.horizon,
        }
    }
}

struct Board {
    width: i32,
    height: i32,
    blocked: Vec<bool>,
}

impl Board {
    fn new(instance: &Instance) -> Self {
        let (w, h) = (instance.width as i32, instance.height as i32);
        let mut blocked = vec![false; (w * h) as usize];
        for o in &instance.obstacles {
            if o.x >= 0 && o.y >= 0 && o.x < w && o.y < h {
                blocked[(o.y * w + o.x) as usize] = true;
            }
        }
        Self { width: w, height: h, blocked }
    }

    fn index(&self, c: Cell) -> Option<usize> {
        (c.x >= 0 && c.y >= 0 && c.x < self.width && c.y < self.height)
            .then(|| (c.y * self.width + c.x) as usize)
            .filter(|&i| !self.blocked[i])
    }

    /// The cell itself first, then its free neighbors.
    fn moves(&self, c: Cell) -> impl Iterator<Item = Cell> + '_ {
        [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .map(move |(dx, dy)| Cell::new(c.x + dx, c.y + dy))
            .filter(|&n| self.index(n).is_some())
    }

    fn distances(&self, from: Cell) -> Vec<u32> {
        let mut dist = vec![u32::MAX; (self.width * self.height) as usize];
        let mut queue = VecDeque::new();
        if let Some(i) = self.index(from) {
            dist[i] = 0;
            queue.push_back(from);
        }
        while let Some(c) = queue.pop_front() {
            let d = dist[self.index(c).unwrap()];
            for n in self.moves(c) {
                let i = self.index(n).unwrap();
                if dist[i] == u32::MAX {
                    dist[i] = d + 1;
                    queue.push_back(n);
                }
            }
        }
        dist
    }
}

fn seeds(instance: &Instance) -> Vec<(SpaceTime, Option<usize>)> {
    let mut s: Vec<_> = (1..=instance.horizon)
        .map(|t| (SpaceTime::new(instance.launcher, t), None))
        .collect();
    for (r, robot) in instance.extant_robots.iter().enumerate() {
        s.push((SpaceTime::new(robot.start_cell, 1), Some(r)));
    }
    s
}

/// Number of walk prefixes the enumeration visits.
pub fn count_walk_states(instance: &Instance) -> u64 {
    let board = Board::new(instance);
    let home = board.distances(instance.launcher);
    let cells = (board.width * board.height) as usize;
    let mut total = 0.0f64;
    for (seed, _) in seeds(instance) {
        let Some(i) = board.index(seed.cell) else { continue };
        if home[i] > instance.horizon - seed.time {
            continue;
        }
        let mut count = vec![0.0f64; cells];
        count[i] = 1.0;
        total += 1.0;
        for t in seed.time..instance.horizon {
            let mut next = vec![0.0f64; cells];
            for (k, &n) in count.iter().enumerate() {
                if n == 0.0 {
                    continue;
                }
                let c = Cell::new(k as i32 % board.width, k as i32 / board.width);
                for m in board.moves(c) {
                    let j = board.index(m).unwrap();
                    if home[j] <= instance.horizon - (t + 1) {
                        next[j] += n;
                    }
                }
            }
            total += next.iter().sum::<f64>();
            count = next;
        }
    }
    total.min(u64::MAX as f64) as u64
}

/// Every feasible single-trip route within the caps, as columns.
///
/// Walks are explored depth first from every launcher time and every
/// extant-robot start; whenever a walk stands on the launcher, each
/// capacity-feasible subset of the items it passes inside their windows
/// becomes one column (the earliest passing time is the pickup time).
pub fn enumerate_routes(instance: &Instance, caps: EnumerationCaps) -> Result<Vec<Column>> {
    let states = count_walk_states(instance);
    if states > STATE_GUARD {
        return Err(Error::EnumerationTooLarge(states));
    }
    let board = Board::new(instance);
    let home = board.distances(instance.launcher);
    let mut out = Vec::new();
    let mut walker = Walker {
        instance,
        board: &board,
        home: &home,
        caps,
        path: Vec::new(),
        owner: None,
        out: &mut out,
    };
    for (seed, owner) in seeds(instance) {
        let Some(i) = board.index(seed.cell) else { continue };
        if home[i] > instance.horizon - seed.time {
            continue;
        }
        walker.owner = owner;
        walker.path.clear();
        walker.path.push(seed);
        walker.walk();
    }
    Ok(out)
}

struct Walker<'a> {
    instance: &'a Instance,
    board: &'a Board,
    home: &'a [u32],
    caps: EnumerationCaps,
    path: Vec<SpaceTime>,
    owner: Option<usize>,
    out: &'a mut Vec<Column>,
}

impl Walker<'_> {
    fn walk(&mut self) {
        let at = *self.path.last().unwrap();
        if at.cell == self.instance.launcher {
            self.record();
        }
        if at.time == self.instance.horizon {
            return;
        }
        let left = self.instance.horizon - (at.time + 1);
        let next: Vec<Cell> = self.board.moves(at.cell).collect();
        for n in next {
            if self.home[self.board.index(n).unwrap()] <= left {
                self.path.push(SpaceTime::new(n, at.time + 1));
                self.walk();
                self.path.pop();
            }
        }
    }

    fn record(&mut self) {
        let inst = self.instance;
        // earliest in-window visit of each item
        let mut visits: Vec<Pickup> = Vec::new();
        for item in &inst.items {
            if let Some(p) = self
                .path
                .iter()
                .find(|p| p.cell == item.cell && p.time >= item.window.earliest && p.time <= item.window.latest)
            {
                visits.push(Pickup { item: item.id, time: p.time });
            }
        }
        let cap = match self.owner {
            Some(r) => inst.extant_robots[r].remaining_capacity,
            None => inst.robot_capacity,
        };
        for mask in 0u32..(1 << visits.len()) {
            if mask.count_ones() as usize > self.caps.max_items {
                continue;
            }
            let mut pickups: Vec<Pickup> = (0..visits.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| visits[k])
                .collect();
            let load: u32 = pickups.iter().map(|p| inst.items[p.item].demand).sum();
            if load > cap {
                continue;
            }
            pickups.sort_by_key(|p| p.time);
            if self.slack(&pickups) > self.caps.max_slack {
                continue;
            }
            let route = Route {
                start_time: self.path[0].time,
                positions: self.path.clone(),
                pickups,
                owner: self.owner,
            };
            self.out.push(column_unchecked(&route, inst));
        }
    }

    fn slack(&self, pickups: &[Pickup]) -> u32 {
        if self.caps.max_slack >= self.instance.horizon {
            return 0;
        }
        let mut anchors = vec![self.path[0].cell];
        anchors.extend(pickups.iter().map(|p| self.instance.items[p.item].cell));
        anchors.push(self.instance.launcher);
        let shortest: u32 = anchors
            .windows(2)
            .map(|w| self.board.distances(w[0])[self.board.index(w[1]).unwrap()])
            .sum();
        (self.path.len() as u32 - 1).saturating_sub(shortest)
    }
}
