use alloc::vec;
use alloc::vec::Vec;

use crate::coarsen::{AggNode, AggregateGraph, UsedArc, SINK, SOURCE};
use crate::model::{Instance, Time};

/// Partial path in the aggregate graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpLabel {
    pub node: usize,
    /// Bit `d` set when item `d` has been picked.
    pub visited: u128,
    pub cost: f64,
    pub capacity: u32,
    pub parent: Option<usize>,
    /// Minimizer times of the arc that created this label.
    pub depart: Option<Time>,
    pub arrive: Option<Time>,
}

/// Every label created by one run, with the sink labels listed separately.
#[derive(Debug, Clone, Default)]
pub struct LabelPool {
    pub labels: Vec<DpLabel>,
    pub sink: Vec<usize>,
}

impl LabelPool {
    /// Label indices from the first seed to `id`.
    pub fn chain(&self, id: usize) -> Vec<usize> {
        let mut chain = vec![id];
        let mut at = id;
        while let Some(p) = self.labels[at].parent {
            chain.push(p);
            at = p;
        }
        chain.reverse();
        chain
    }

    /// Cheapest sink label; ties go to the one created first.
    pub fn best(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for &s in &self.sink {
            if best.is_none_or(|b| self.labels[s].cost < self.labels[b].cost) {
                best = Some(s);
            }
        }
        best
    }

    /// Aggregate arcs along the path of `id`, with their minimizer times.
    pub fn used_arcs(&self, graph: &AggregateGraph, id: usize) -> Vec<UsedArc> {
        self.chain(id)
            .windows(2)
            .map(|w| {
                let (a, b) = (&self.labels[w[0]], &self.labels[w[1]]);
                UsedArc {
                    from: graph.node(a.node),
                    to: graph.node(b.node),
                    depart: b.depart,
                    arrive: b.arrive,
                }
            })
            .collect()
    }

    /// True when every item on the path is entered and left at the same time.
    pub fn is_consistent(&self, graph: &AggregateGraph, id: usize) -> bool {
        let chain = self.chain(id);
        chain.windows(2).all(|w| {
            let (a, b) = (&self.labels[w[0]], &self.labels[w[1]]);
            !matches!(graph.node(a.node), AggNode::Window { .. }) || a.arrive == b.depart
        })
    }
}

/// Bitmask of the items whose demand is at most `c`, for every `c` up to `max`.
fn fitting_masks(instance: &Instance, max: u32) -> Vec<u128> {
    (0..=max)
        .map(|c| {
            instance
                .items
                .iter()
                .filter(|d| d.demand <= c)
                .fold(0u128, |m, d| m | 1u128 << d.id)
        })
        .collect()
}

/// Removes labels that another label in the same bucket makes redundant:
/// no more expensive and with a superset of still-pickable items. Exact
/// ties keep the label created first.
pub fn dominate(labels: &[DpLabel], bucket: &mut Vec<usize>, fits: u128) {
    let avail = |k: usize| !labels[k].visited & fits;
    bucket.sort_by(|&a, &b| {
        labels[a]
            .cost
            .total_cmp(&labels[b].cost)
            .then(avail(b).count_ones().cmp(&avail(a).count_ones()))
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::with_capacity(bucket.len());
    for &k in bucket.iter() {
        let ak = avail(k);
        let dominated = kept
            .iter()
            .any(|&j| labels[j].cost <= labels[k].cost && ak & !avail(j) == 0);
        if !dominated {
            kept.push(k);
        }
    }
    kept.sort_unstable();
    *bucket = kept;
}

/// Labeling dynamic program over remaining capacity.
///
/// Levels are processed from the largest capacity down. Every item arc
/// strictly lowers the capacity, so extensions out of a level never land
/// in it and each level is final once reached.
pub fn rcsp_label(graph: &AggregateGraph, instance: &Instance, dominance: bool) -> LabelPool {
    let c0 = instance.robot_capacity;
    let cmax = instance
        .extant_robots
        .iter()
        .map(|r| r.remaining_capacity)
        .fold(c0, u32::max);
    let fits = fitting_masks(instance, cmax);
    let demand: Vec<u32> = instance.items.iter().map(|d| d.demand).collect();

    let mut pool = LabelPool::default();
    // buckets[c][node] holds labels awaiting processing
    let mut buckets: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); graph.nodes().len()]; cmax as usize + 1];
    let push = |pool: &mut LabelPool, buckets: &mut Vec<Vec<Vec<usize>>>, l: DpLabel| {
        let id = pool.labels.len();
        pool.labels.push(l);
        if l.node == SINK {
            pool.sink.push(id);
        } else {
            buckets[l.capacity as usize][l.node].push(id);
        }
    };
    let seed = DpLabel {
        node: SOURCE,
        visited: 0,
        cost: 0.0,
        capacity: c0,
        parent: None,
        depart: None,
        arrive: None,
    };
    push(&mut pool, &mut buckets, seed);
    for (r, robot) in instance.extant_robots.iter().enumerate() {
        let l = DpLabel {
            node: graph.extant_node(r),
            capacity: robot.remaining_capacity,
            cost: graph.extant_seed(r),
            ..seed
        };
        push(&mut pool, &mut buckets, l);
    }

    for c in (0..=cmax as usize).rev() {
        for node in 0..graph.nodes().len() {
            let mut bucket = core::mem::take(&mut buckets[c][node]);
            if bucket.is_empty() {
                continue;
            }
            if dominance && bucket.len() > 1 {
                dominate(&pool.labels, &mut bucket, fits[c]);
            }
            for &k in &bucket {
                let from = pool.labels[k];
                for arc in graph.out_arcs(node) {
                    let mut next = DpLabel {
                        node: arc.to,
                        cost: from.cost + arc.weight,
                        parent: Some(k),
                        depart: arc.depart,
                        arrive: arc.arrive,
                        ..from
                    };
                    match graph.item_of(arc.to) {
                        Some(d) => {
                            if from.visited >> d & 1 == 1 || demand[d] > from.capacity {
                                continue;
                            }
                            next.visited |= 1u128 << d;
                            next.capacity -= demand[d];
                        }
                        None if arc.to == SINK => {}
                        None => continue,
                    }
                    push(&mut pool, &mut buckets, next);
                }
            }
        }
    }
    pool
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(cost: f64, visited: u128) -> DpLabel {
        DpLabel {
            node: 3,
            visited,
            cost,
            capacity: 4,
            parent: None,
            depart: None,
            arrive: None,
        }
    }

    #[test]
    fn cheaper_label_with_same_items_wins() {
        let labels = [label(-5.0, 0b1), label(-3.0, 0b1)];
        let mut bucket = vec![0, 1];
        dominate(&labels, &mut bucket, 0b111);
        assert_eq!(bucket, vec![0]);
    }

    #[test]
    fn equal_cost_larger_availability_wins() {
        let labels = [label(-4.0, 0b011), label(-4.0, 0b001)];
        let mut bucket = vec![0, 1];
        dominate(&labels, &mut bucket, 0b111);
        assert_eq!(bucket, vec![1]);
    }

    #[test]
    fn incomparable_labels_both_survive() {
        let labels = [label(-6.0, 0b011), label(-2.0, 0b001)];
        let mut bucket = vec![0, 1];
        dominate(&labels, &mut bucket, 0b111);
        assert_eq!(bucket, vec![0, 1]);
    }

    #[test]
    fn exact_tie_keeps_first_created() {
        let labels = [label(-1.0, 0b010), label(-1.0, 0b010)];
        let mut bucket = vec![1, 0];
        dominate(&labels, &mut bucket, 0b111);
        assert_eq!(bucket, vec![0]);
    }

    #[test]
    fn items_that_no_longer_fit_do_not_count() {
        // item 2 is unvisited in label 1 but too large for the remaining capacity
        let labels = [label(-4.0, 0b011), label(-3.0, 0b001)];
        let mut bucket = vec![0, 1];
        dominate(&labels, &mut bucket, 0b011);
        assert_eq!(bucket, vec![0, 1]);
        let mut bucket = vec![0, 1];
        dominate(&labels, &mut bucket, 0b001);
        assert_eq!(bucket, vec![0]);
    }
}
