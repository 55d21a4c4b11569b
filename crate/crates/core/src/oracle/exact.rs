use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::enumerate::{enumerate_routes, EnumerationCaps};
use super::lp::full_lp;
use crate::error::{Error, Result};
use crate::model::{Column, Instance, Route, SpaceEdge, SpaceTime, Time};

#[derive(Debug, Clone)]
pub struct ExactSolution {
    pub objective: f64,
    pub routes: Vec<Route>,
}

/// Integer optimum over every route of a tiny instance.
pub fn solve_exact(instance: &Instance) -> Result<ExactSolution> {
    let columns = enumerate_routes(instance, EnumerationCaps::exhaustive(instance))?;
    solve_exact_over(instance, &columns, true)
}

/// Integer optimum over the given columns. With `collisions` off only the
/// fleet size limits how routes combine.
///
/// A plan fixes the item set of every extant robot and a family of disjoint
/// item sets served by new trips; its bound is the sum of the cheapest
/// column per set. Plans are searched best bound first, each by a depth
/// first choice of one column per set. New trips that cost something never
/// help, so only negative-cost new columns take part. The search stops
/// early once an incumbent meets the LP bound over the same columns.
pub fn solve_exact_over(instance: &Instance, columns: &[Column], collisions: bool) -> Result<ExactSolution> {
    let mut extant: Vec<BTreeMap<Vec<usize>, Vec<&Column>>> = vec![BTreeMap::new(); instance.extant_robots.len()];
    let mut fresh: BTreeMap<Vec<usize>, Vec<&Column>> = BTreeMap::new();
    for c in columns {
        match c.owner {
            Some(r) => extant[r].entry(c.items.clone()).or_default().push(c),
            None if c.cost < 0.0 && !c.items.is_empty() => fresh.entry(c.items.clone()).or_default().push(c),
            None => {}
        }
    }
    if extant.iter().any(BTreeMap::is_empty) {
        return Err(Error::Infeasible);
    }
    let mut lists: Vec<Vec<&Column>> = Vec::new();
    let mut extant_groups: Vec<Vec<usize>> = Vec::new();
    for groups in extant {
        let mut ids = Vec::new();
        for list in groups.into_values() {
            ids.push(lists.len());
            lists.push(list);
        }
        extant_groups.push(ids);
    }
    lists.extend(fresh.into_values());
    for list in &mut lists {
        list.sort_by(|a, b| a.cost.total_cmp(&b.cost));
    }

    let mut planner = Planner {
        lists: &lists,
        covered: vec![false; instance.items.len()],
        slots: Vec::new(),
        plans: Vec::new(),
    };
    planner.extant(&extant_groups, 0, 0.0);
    let mut plans = planner.plans;
    plans.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut s = Search {
        floor: full_lp(instance, columns, collisions)?,
        fleet: instance.fleet_size,
        collisions,
        board: Occupancy::new(instance),
        chosen: Vec::new(),
        cost: 0.0,
        best: None,
    };
    for (bound, slots) in &plans {
        if s.proven() || s.beaten(*bound) {
            break;
        }
        let mut domains: Vec<Vec<&Column>> = slots.iter().map(|&g| lists[g].clone()).collect();
        domains.sort_by_key(Vec::len);
        if s.fleet_allows(&domains) {
            s.fill(&domains);
        }
    }
    let (objective, picked) = s.best.ok_or(Error::Infeasible)?;
    Ok(ExactSolution {
        objective,
        routes: picked.into_iter().map(|c| c.route.clone()).collect(),
    })
}

type Plan = (f64, Vec<usize>);

struct Planner<'a, 'c> {
    lists: &'a [Vec<&'c Column>],
    covered: Vec<bool>,
    slots: Vec<usize>,
    plans: Vec<Plan>,
}

impl Planner<'_, '_> {
    fn items(&self, g: usize) -> &[usize] {
        &self.lists[g][0].items
    }

    fn take(&mut self, g: usize, on: bool) {
        for k in 0..self.lists[g][0].items.len() {
            let d = self.lists[g][0].items[k];
            self.covered[d] = on;
        }
        if on {
            self.slots.push(g);
        } else {
            self.slots.pop();
        }
    }

    fn extant(&mut self, groups: &[Vec<usize>], r: usize, bound: f64) {
        if r == groups.len() {
            self.fresh(groups, 0, bound);
            return;
        }
        for &g in &groups[r] {
            if self.items(g).iter().any(|&d| self.covered[d]) {
                continue;
            }
            self.take(g, true);
            self.extant(groups, r + 1, bound + self.lists[g][0].cost);
            self.take(g, false);
        }
    }

    /// New-trip groups come after every extant group in `lists`.
    fn fresh(&mut self, groups: &[Vec<usize>], from: usize, bound: f64) {
        self.plans.push((bound, self.slots.clone()));
        let first = groups.iter().map(Vec::len).sum::<usize>();
        for g in (first + from)..self.lists.len() {
            if self.items(g).iter().any(|&d| self.covered[d]) {
                continue;
            }
            self.take(g, true);
            self.fresh(groups, g - first + 1, bound + self.lists[g][0].cost);
            self.take(g, false);
        }
    }
}

/// Dense vertex, edge and fleet occupancy of the chosen routes.
struct Occupancy {
    width: i32,
    cells: usize,
    vertex: Vec<bool>,
    edge: Vec<bool>,
    active: Vec<u32>,
}

impl Occupancy {
    fn new(instance: &Instance) -> Self {
        let cells = (instance.width * instance.height) as usize;
        let times = instance.horizon as usize + 2;
        Self {
            width: instance.width as i32,
            cells,
            vertex: vec![false; cells * times],
            edge: vec![false; cells * times * 5],
            active: vec![0; times],
        }
    }

    fn vertex(&self, p: &SpaceTime) -> usize {
        p.time as usize * self.cells + (p.cell.y * self.width + p.cell.x) as usize
    }

    fn edge(&self, e: &SpaceEdge) -> usize {
        let dir = match (e.b.x - e.a.x, e.b.y - e.a.y) {
            (1, 0) => 1,
            (-1, 0) => 2,
            (0, 1) => 3,
            (0, -1) => 4,
            _ => 0,
        };
        self.vertex(&SpaceTime::new(e.a, e.time)) * 5 + dir
    }
}

struct Search<'a> {
    floor: f64,
    fleet: u32,
    collisions: bool,
    board: Occupancy,
    chosen: Vec<&'a Column>,
    cost: f64,
    best: Option<(f64, Vec<&'a Column>)>,
}

impl<'a> Search<'a> {
    fn beaten(&self, lb: f64) -> bool {
        self.best.as_ref().is_some_and(|b| lb >= b.0 - 1e-9)
    }

    fn proven(&self) -> bool {
        self.beaten(self.floor)
    }

    fn fits(&self, c: &Column) -> bool {
        let b = &self.board;
        if c.positions.iter().any(|p| b.active[p.time as usize] >= self.fleet) {
            return false;
        }
        !self.collisions
            || (c.positions.iter().all(|p| !b.vertex[b.vertex(p)]) && c.edges.iter().all(|e| !b.edge[b.edge(e)]))
    }

    fn mark(&mut self, c: &Column, on: bool) {
        let b = &mut self.board;
        for p in &c.positions {
            if on {
                b.active[p.time as usize] += 1;
            } else {
                b.active[p.time as usize] -= 1;
            }
            if self.collisions {
                let i = b.vertex(p);
                b.vertex[i] = on;
            }
        }
        if self.collisions {
            for e in &c.edges {
                let i = b.edge(e);
                b.edge[i] = on;
            }
        }
    }

    /// Whether some choice of active intervals, one per domain, respects the
    /// fleet size and could still beat the incumbent.
    fn fleet_allows(&mut self, domains: &[Vec<&'a Column>]) -> bool {
        let spans: Vec<Vec<(Time, Time, f64)>> = domains
            .iter()
            .map(|d| {
                let mut best: BTreeMap<(Time, Time), f64> = BTreeMap::new();
                for c in d {
                    let v = best.entry((c.start(), c.end())).or_insert(c.cost);
                    *v = v.min(c.cost);
                }
                best.into_iter().map(|((a, b), v)| (a, b, v)).collect()
            })
            .collect();
        let mins: Vec<f64> = spans.iter().map(|s| s.iter().map(|x| x.2).fold(f64::INFINITY, f64::min)).collect();
        let mut rest = vec![0.0; mins.len() + 1];
        for k in (0..mins.len()).rev() {
            rest[k] = rest[k + 1] + mins[k];
        }
        self.spans_fit(&spans, &rest, 0, self.cost)
    }

    fn spans_fit(&mut self, spans: &[Vec<(Time, Time, f64)>], rest: &[f64], k: usize, cost: f64) -> bool {
        if k == spans.len() {
            return true;
        }
        for &(a, b, v) in &spans[k] {
            if self.beaten(cost + v + rest[k + 1]) {
                continue;
            }
            let active = &mut self.board.active;
            if (a..=b).any(|t| active[t as usize] >= self.fleet) {
                continue;
            }
            (a..=b).for_each(|t| active[t as usize] += 1);
            let ok = self.spans_fit(spans, rest, k + 1, cost + v);
            let active = &mut self.board.active;
            (a..=b).for_each(|t| active[t as usize] -= 1);
            if ok {
                return true;
            }
        }
        false
    }

    /// One column per domain. Every domain holds only columns that fit the
    /// current choice, cheapest first; after each pick the later domains are
    /// filtered again and the smallest is tried next.
    fn fill(&mut self, domains: &[Vec<&'a Column>]) {
        let Some((first, later)) = domains.split_first() else {
            if !self.beaten(self.cost) {
                self.best = Some((self.cost, self.chosen.clone()));
            }
            return;
        };
        let rest: f64 = later.iter().map(|d| d[0].cost).sum();
        for &c in first {
            if self.proven() || self.beaten(self.cost + c.cost + rest) {
                break;
            }
            self.mark(c, true);
            self.cost += c.cost;
            self.chosen.push(c);
            let mut next = Vec::with_capacity(later.len());
            for d in later {
                let kept: Vec<&Column> = d.iter().copied().filter(|x| self.fits(x)).collect();
                if kept.is_empty() {
                    break;
                }
                next.push(kept);
            }
            if next.len() == later.len() {
                let bound = self.cost + next.iter().map(|d| d[0].cost).sum::<f64>();
                if !self.beaten(bound) && self.fleet_allows(&next) {
                    next.sort_by_key(Vec::len);
                    self.fill(&next);
                }
            }
            self.chosen.pop();
            self.cost -= c.cost;
            self.mark(c, false);
        }
    }
}
