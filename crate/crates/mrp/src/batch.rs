//! Generate-and-solve runs over consecutive seeds, with a summary table.

use std::fmt::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use mrp_core::oracle::validate_solution;
use mrp_core::{solve, SolverConfig};
use serde::Serialize;

use crate::generate::{generate, Preset};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchRow {
    pub seed: u64,
    pub time_secs: f64,
    pub iterations: usize,
    pub lp_objective: f64,
    pub ilp_objective: f64,
    pub gap: f64,
    pub reuse: bool,
    pub converged: bool,
    pub valid: bool,
    /// Set when generation or solving failed; the numbers are then NaN.
    pub error: Option<String>,
}

impl BatchRow {
    fn failed(seed: u64, error: String) -> Self {
        Self {
            seed,
            time_secs: f64::NAN,
            iterations: 0,
            lp_objective: f64::NAN,
            ilp_objective: f64::NAN,
            gap: f64::NAN,
            reuse: false,
            converged: false,
            valid: false,
            error: Some(error),
        }
    }
}

pub fn run_one(preset: Preset, seed: u64, config: &SolverConfig) -> BatchRow {
    let inst = match generate(&preset.params(seed)) {
        Ok(i) => i,
        Err(e) => return BatchRow::failed(seed, e.to_string()),
    };
    match solve(&inst, config) {
        Ok(sol) => BatchRow {
            seed,
            time_secs: sol.wall_secs,
            iterations: sol.iterations,
            lp_objective: sol.lp_bound,
            ilp_objective: sol.ilp_objective,
            gap: sol.relative_gap,
            reuse: sol.reuse,
            converged: sol.converged,
            valid: validate_solution(&inst, &sol.routes).is_valid(),
            error: None,
        },
        Err(e) => BatchRow::failed(seed, e.to_string()),
    }
}

/// Runs seeds `seed0..seed0 + n` on up to `workers` threads. Rows come back
/// in seed order; failures are recorded and the batch goes on.
pub fn run_batch(preset: Preset, n: usize, seed0: u64, config: &SolverConfig, workers: usize) -> Vec<BatchRow> {
    let next = AtomicUsize::new(0);
    let rows = Mutex::new(Vec::with_capacity(n));
    std::thread::scope(|scope| {
        for _ in 0..workers.clamp(1, n.max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let row = run_one(preset, seed0 + k as u64, config);
                rows.lock().unwrap().push(row);
            });
        }
    });
    let mut rows = rows.into_inner().unwrap();
    rows.sort_by_key(|r| r.seed);
    rows
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stat {
    pub mean: f64,
    pub median: f64,
}

fn stat(values: impl Iterator<Item = f64>) -> Option<Stat> {
    let mut v: Vec<f64> = values.collect();
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    let median = if n % 2 == 1 { v[n / 2] } else { (v[n / 2 - 1] + v[n / 2]) / 2.0 };
    Some(Stat { mean: v.iter().sum::<f64>() / n as f64, median })
}

/// Column headers of the summary table.
pub const COLUMNS: [&str; 5] = ["Time (sec)", "Iterations", "LP Objective", "Integral Objective", "Relative Gap"];

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub solved: usize,
    pub failed: usize,
    pub reuse: usize,
    /// One entry per [`COLUMNS`] header; `None` when nothing was solved.
    pub stats: [Option<Stat>; 5],
}

pub fn summarize(rows: &[BatchRow]) -> Summary {
    let ok: Vec<&BatchRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    Summary {
        solved: ok.len(),
        failed: rows.len() - ok.len(),
        reuse: ok.iter().filter(|r| r.reuse).count(),
        stats: [
            stat(ok.iter().map(|r| r.time_secs)),
            stat(ok.iter().map(|r| r.iterations as f64)),
            stat(ok.iter().map(|r| r.lp_objective)),
            stat(ok.iter().map(|r| r.ilp_objective)),
            stat(ok.iter().map(|r| r.gap)),
        ],
    }
}

impl Summary {
    pub fn table(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:<8}", "");
        for c in COLUMNS {
            let _ = write!(s, " | {c:>18}");
        }
        s.push('\n');
        for (name, pick) in [("mean", 0), ("median", 1)] {
            let _ = write!(s, "{name:<8}");
            for st in &self.stats {
                match st {
                    Some(st) => {
                        let v = if pick == 0 { st.mean } else { st.median };
                        let _ = write!(s, " | {v:>18.4}");
                    }
                    None => {
                        let _ = write!(s, " | {:>18}", "-");
                    }
                }
            }
            s.push('\n');
        }
        let _ = writeln!(s, "solved {}, failed {}, reuse in {} of {}", self.solved, self.failed, self.reuse, self.solved);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_batch_has_an_empty_summary() {
        let rows = run_batch(Preset::Tiny, 0, 1, &SolverConfig::default(), 4);
        assert!(rows.is_empty());
        let s = summarize(&rows);
        assert_eq!((s.solved, s.failed, s.reuse), (0, 0, 0));
        assert!(s.stats.iter().all(Option::is_none));
        assert!(s.table().contains("Integral Objective"));
    }

    #[test]
    fn median_of_even_count() {
        let st = stat([4.0, 1.0, 3.0, 2.0].into_iter()).unwrap();
        assert_eq!(st.median, 2.5);
        assert_eq!(st.mean, 2.5);
    }

    #[test]
    fn rows_come_back_in_seed_order() {
        let rows = run_batch(Preset::Tiny, 6, 10, &SolverConfig::default(), 3);
        let seeds: Vec<u64> = rows.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, (10..16).collect::<Vec<_>>());
        assert!(rows.iter().all(|r| r.error.is_none() && r.valid));
    }
}
