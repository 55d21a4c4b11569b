//! Bounded primal simplex for `min c x` subject to `A x + s = b`.
//!
//! Every row carries its own slack with bounds `[0, inf)` for `<=` rows and
//! `[0, 0]` for equality rows. The basis is factored by splitting off the
//! rows whose slack is basic: what remains is a square kernel of the basic
//! structural columns restricted to the other rows, which is small because
//! most master rows stay slack. Pivots between refactorizations are kept as
//! product-form eta vectors.
//!
//! Rows and columns can be appended between solves; the previous basis is
//! kept and extended with the new slacks, so re-solving is a warm start.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

const PRIMAL_TOL: f64 = 1e-9;
const DUAL_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-9;
const REFACTOR_EVERY: usize = 64;
const DEGENERATE_BEFORE_BLAND: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowKind {
    Le,
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Var {
    Col(usize),
    Slack(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Basic(usize),
    Lower,
    Upper,
}

/// Saved basis, restorable with [`LinearProgram::restore`].
#[derive(Debug, Clone)]
pub struct BasisSnapshot {
    basis: Vec<Var>,
    col_status: Vec<Status>,
    row_status: Vec<Status>,
}

/// Dense LU with partial pivoting, `P K = L U`, packed in one matrix.
#[derive(Debug, Clone)]
struct DenseLu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl DenseLu {
    /// Factors `k`; on failure returns the kernel columns left without a
    /// pivot and the rows never used as pivot rows.
    fn factor(n: usize, mut a: Vec<f64>) -> core::result::Result<Self, (Vec<usize>, Vec<usize>)> {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut dependent = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let mut best = row;
            let mut best_abs = 0.0;
            for r in row..n {
                let v = a[r * n + col].abs();
                if v > best_abs {
                    best_abs = v;
                    best = r;
                }
            }
            if best_abs < 1e-11 {
                dependent.push(col);
                continue;
            }
            if best != row {
                for c in 0..n {
                    a.swap(best * n + c, row * n + c);
                }
                perm.swap(best, row);
            }
            let p = a[row * n + col];
            for r in row + 1..n {
                let f = a[r * n + col] / p;
                if f != 0.0 {
                    a[r * n + col] = f;
                    for c in col + 1..n {
                        a[r * n + c] -= f * a[row * n + c];
                    }
                } else {
                    a[r * n + col] = 0.0;
                }
            }
            row += 1;
        }
        if dependent.is_empty() {
            Ok(Self { n, lu: a, perm })
        } else {
            Err((dependent, perm[row..].to_vec()))
        }
    }

    /// Solves `K z = b`.
    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut z: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = z[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * z[j];
            }
            z[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = z[i];
            for j in i + 1..n {
                s -= self.lu[i * n + j] * z[j];
            }
            z[i] = s / self.lu[i * n + i];
        }
        z
    }

    /// Solves `K^T w = c`.
    fn solve_t(&self, c: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut v = c.to_vec();
        for i in 0..n {
            let mut s = v[i];
            for j in 0..i {
                s -= self.lu[j * n + i] * v[j];
            }
            v[i] = s / self.lu[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = v[i];
            for j in i + 1..n {
                s -= self.lu[j * n + i] * v[j];
            }
            v[i] = s;
        }
        let mut w = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            w[p] = v[i];
        }
        w
    }
}

#[derive(Debug, Clone)]
struct Eta {
    pos: usize,
    pivot: f64,
    /// Nonzeros of the entering column off the pivot position.
    entries: Vec<(usize, f64)>,
}

#[derive(Debug, Clone)]
struct Factor {
    lu: DenseLu,
    /// Kernel row index -> model row.
    kernel_rows: Vec<usize>,
    in_kernel: Vec<bool>,
    /// Kernel column index -> (basis position, model column).
    kernel_cols: Vec<(usize, usize)>,
    /// Model row -> basis position of its slack, when basic.
    slack_pos: Vec<Option<usize>>,
    etas: Vec<Eta>,
}

#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    cols: Vec<Vec<(usize, f64)>>,
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    rhs: Vec<f64>,
    kinds: Vec<RowKind>,

    basis: Vec<Var>,
    col_status: Vec<Status>,
    row_status: Vec<Status>,
    x_col: Vec<f64>,
    x_slack: Vec<f64>,
    factor: Option<Factor>,
    iterations: usize,
}

impl LinearProgram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// Total simplex pivots and bound flips so far.
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Appends an empty row whose slack joins the basis.
    pub fn add_row(&mut self, kind: RowKind, rhs: f64) -> usize {
        let i = self.rhs.len();
        self.rhs.push(rhs);
        self.kinds.push(kind);
        self.row_status.push(Status::Basic(self.basis.len()));
        self.basis.push(Var::Slack(i));
        self.x_slack.push(rhs);
        self.factor = None;
        i
    }

    /// Appends a nonbasic column at its lower bound.
    pub fn add_column(&mut self, cost: f64, lower: f64, upper: f64, entries: Vec<(usize, f64)>) -> usize {
        debug_assert!(entries.iter().all(|&(r, _)| r < self.rhs.len()));
        let j = self.cols.len();
        self.cols.push(entries);
        self.cost.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        self.col_status.push(Status::Lower);
        self.x_col.push(lower);
        if lower != 0.0 {
            self.factor = None;
        }
        j
    }

    pub fn column(&self, j: usize) -> &[(usize, f64)] {
        &self.cols[j]
    }

    pub fn cost(&self, j: usize) -> f64 {
        self.cost[j]
    }

    pub fn bounds(&self, j: usize) -> (f64, f64) {
        (self.lower[j], self.upper[j])
    }

    pub fn rhs(&self, i: usize) -> f64 {
        self.rhs[i]
    }

    pub fn row_kind(&self, i: usize) -> RowKind {
        self.kinds[i]
    }

    pub fn set_bounds(&mut self, j: usize, lower: f64, upper: f64) {
        self.lower[j] = lower;
        self.upper[j] = upper;
        match self.col_status[j] {
            Status::Basic(_) => {}
            Status::Upper if upper.is_finite() => self.x_col[j] = upper,
            _ => {
                self.col_status[j] = Status::Lower;
                self.x_col[j] = lower;
            }
        }
        self.factor = None;
    }

    /// Makes column `j` basic in place of the slack of row `i`. Only valid
    /// before the first solve or right after adding both; used to start from
    /// a basis that already satisfies equality rows.
    pub fn crash_basic(&mut self, j: usize, i: usize) {
        if let Status::Basic(p) = self.row_status[i] {
            if self.col_status[j] != Status::Lower {
                return;
            }
            self.basis[p] = Var::Col(j);
            self.col_status[j] = Status::Basic(p);
            self.row_status[i] = Status::Lower;
            self.factor = None;
        }
    }

    pub fn snapshot(&self) -> BasisSnapshot {
        BasisSnapshot {
            basis: self.basis.clone(),
            col_status: self.col_status.clone(),
            row_status: self.row_status.clone(),
        }
    }

    /// Restores a basis saved on the same rows and columns.
    pub fn restore(&mut self, snap: &BasisSnapshot) {
        self.basis.clone_from(&snap.basis);
        self.col_status.clone_from(&snap.col_status);
        self.row_status.clone_from(&snap.row_status);
        for j in 0..self.cols.len() {
            match self.col_status[j] {
                Status::Lower => self.x_col[j] = self.lower[j],
                Status::Upper => self.x_col[j] = self.upper[j],
                Status::Basic(_) => {}
            }
        }
        self.factor = None;
    }

    pub fn value(&self, j: usize) -> f64 {
        self.x_col[j]
    }

    pub fn values(&self) -> &[f64] {
        &self.x_col
    }

    pub fn objective(&self) -> f64 {
        self.cost.iter().zip(&self.x_col).map(|(c, x)| c * x).sum()
    }

    /// Row duals `y = c_B B^-1` of the last solve.
    pub fn duals(&mut self) -> Vec<f64> {
        self.ensure_factor();
        let cb = self.basic_costs(None);
        self.btran(&cb)
    }

    /// `c_j - y a_j` for every column.
    pub fn reduced_costs(&mut self) -> Vec<f64> {
        let y = self.duals();
        (0..self.cols.len()).map(|j| self.cost[j] - self.dot(&y, j)).collect()
    }

    fn var_bounds(&self, v: Var) -> (f64, f64) {
        match v {
            Var::Col(j) => (self.lower[j], self.upper[j]),
            Var::Slack(i) => match self.kinds[i] {
                RowKind::Le => (0.0, f64::INFINITY),
                RowKind::Eq => (0.0, 0.0),
            },
        }
    }

    fn var_value(&self, v: Var) -> f64 {
        match v {
            Var::Col(j) => self.x_col[j],
            Var::Slack(i) => self.x_slack[i],
        }
    }

    fn set_value(&mut self, v: Var, x: f64) {
        match v {
            Var::Col(j) => self.x_col[j] = x,
            Var::Slack(i) => self.x_slack[i] = x,
        }
    }

    fn set_status(&mut self, v: Var, s: Status) {
        match v {
            Var::Col(j) => self.col_status[j] = s,
            Var::Slack(i) => self.row_status[i] = s,
        }
    }

    fn dot(&self, y: &[f64], j: usize) -> f64 {
        self.cols[j].iter().map(|&(r, a)| y[r] * a).sum()
    }

    fn dense_column(&self, v: Var) -> Vec<f64> {
        let mut a = vec![0.0; self.rhs.len()];
        match v {
            Var::Col(j) => {
                for &(r, x) in &self.cols[j] {
                    a[r] += x;
                }
            }
            Var::Slack(i) => a[i] = 1.0,
        }
        a
    }

    fn refactor(&mut self) {
        loop {
            let m = self.rhs.len();
            let mut slack_pos = vec![None; m];
            let mut kernel_cols = Vec::new();
            for (p, v) in self.basis.iter().enumerate() {
                match *v {
                    Var::Slack(i) => slack_pos[i] = Some(p),
                    Var::Col(j) => kernel_cols.push((p, j)),
                }
            }
            let kernel_rows: Vec<usize> = (0..m).filter(|&i| slack_pos[i].is_none()).collect();
            let k = kernel_rows.len();
            debug_assert_eq!(k, kernel_cols.len());
            let mut kernel_index = vec![usize::MAX; m];
            for (a, &r) in kernel_rows.iter().enumerate() {
                kernel_index[r] = a;
            }
            let mut dense = vec![0.0; k * k];
            for (b, &(_, j)) in kernel_cols.iter().enumerate() {
                for &(r, x) in &self.cols[j] {
                    if kernel_index[r] != usize::MAX {
                        dense[kernel_index[r] * k + b] += x;
                    }
                }
            }
            match DenseLu::factor(k, dense) {
                Ok(lu) => {
                    self.factor = Some(Factor {
                        lu,
                        in_kernel: kernel_index.iter().map(|&a| a != usize::MAX).collect(),
                        kernel_rows,
                        kernel_cols,
                        slack_pos,
                        etas: Vec::new(),
                    });
                    return;
                }
                Err((dependent, free_rows)) => {
                    // swap dependent structurals for slacks of uncovered rows
                    for (&b, &a) in dependent.iter().zip(&free_rows) {
                        let (p, j) = kernel_cols[b];
                        let row = kernel_rows[a];
                        self.basis[p] = Var::Slack(row);
                        self.row_status[row] = Status::Basic(p);
                        self.col_status[j] = Status::Lower;
                        self.x_col[j] = self.lower[j];
                    }
                }
            }
        }
    }

    /// Solves `B z = a` for `a` indexed by row; `z` is indexed by basis position.
    fn ftran(&self, a: &[f64]) -> Vec<f64> {
        let f = self.factor.as_ref().expect("factored basis");
        let rhs: Vec<f64> = f.kernel_rows.iter().map(|&r| a[r]).collect();
        let zk = f.lu.solve(&rhs);
        let mut z = vec![0.0; a.len()];
        for (i, sp) in f.slack_pos.iter().enumerate() {
            if let Some(p) = *sp {
                z[p] = a[i];
            }
        }
        for (b, &(p, j)) in f.kernel_cols.iter().enumerate() {
            z[p] = zk[b];
            if zk[b] != 0.0 {
                for &(r, x) in &self.cols[j] {
                    if !f.in_kernel[r] {
                        z[f.slack_pos[r].unwrap()] -= x * zk[b];
                    }
                }
            }
        }
        for eta in &f.etas {
            let v = z[eta.pos] / eta.pivot;
            if v != 0.0 {
                for &(i, x) in &eta.entries {
                    z[i] -= x * v;
                }
            }
            z[eta.pos] = v;
        }
        z
    }

    /// Solves `y B = u` for `u` indexed by basis position; `y` is indexed by row.
    fn btran(&self, u: &[f64]) -> Vec<f64> {
        let f = self.factor.as_ref().expect("factored basis");
        let mut u = u.to_vec();
        for eta in f.etas.iter().rev() {
            let s: f64 = eta.entries.iter().map(|&(i, x)| u[i] * x).sum();
            u[eta.pos] = (u[eta.pos] - s) / eta.pivot;
        }
        let mut y = vec![0.0; u.len()];
        for (i, sp) in f.slack_pos.iter().enumerate() {
            if let Some(p) = *sp {
                y[i] = u[p];
            }
        }
        let rhs: Vec<f64> = f
            .kernel_cols
            .iter()
            .map(|&(p, j)| {
                let off: f64 = self.cols[j]
                    .iter()
                    .filter(|&&(r, _)| !f.in_kernel[r])
                    .map(|&(r, x)| y[r] * x)
                    .sum();
                u[p] - off
            })
            .collect();
        let w = f.lu.solve_t(&rhs);
        for (a, &r) in f.kernel_rows.iter().enumerate() {
            y[r] = w[a];
        }
        y
    }

    /// Recomputes basic values from the nonbasic ones.
    fn recompute_basics(&mut self) {
        let mut r = self.rhs.clone();
        for j in 0..self.cols.len() {
            if !matches!(self.col_status[j], Status::Basic(_)) && self.x_col[j] != 0.0 {
                for &(i, a) in &self.cols[j] {
                    r[i] -= a * self.x_col[j];
                }
            }
        }
        for i in 0..self.rhs.len() {
            if !matches!(self.row_status[i], Status::Basic(_)) {
                self.x_slack[i] = 0.0;
            }
        }
        let z = self.ftran(&r);
        for (p, &v) in self.basis.clone().iter().enumerate() {
            self.set_value(v, z[p]);
        }
    }

    fn ensure_factor(&mut self) {
        if self.factor.is_none() {
            self.refactor();
            self.recompute_basics();
        }
    }

    /// Phase-one costs when `infeasible` is given, true costs otherwise.
    fn basic_costs(&self, phase_one: Option<&[i8]>) -> Vec<f64> {
        self.basis
            .iter()
            .enumerate()
            .map(|(p, v)| match phase_one {
                Some(sign) => f64::from(sign[p]),
                None => match *v {
                    Var::Col(j) => self.cost[j],
                    Var::Slack(_) => 0.0,
                },
            })
            .collect()
    }

    /// Direction of infeasibility of each basic variable: -1 below its lower
    /// bound, +1 above its upper bound.
    fn infeasibility(&self) -> Option<Vec<i8>> {
        let mut any = false;
        let sign: Vec<i8> = self
            .basis
            .iter()
            .map(|&v| {
                let (l, u) = self.var_bounds(v);
                let x = self.var_value(v);
                if x < l - PRIMAL_TOL {
                    any = true;
                    -1
                } else if x > u + PRIMAL_TOL {
                    any = true;
                    1
                } else {
                    0
                }
            })
            .collect();
        any.then_some(sign)
    }

    /// Runs the simplex method from the current basis to optimality.
    pub fn solve(&mut self) -> Result<()> {
        self.ensure_factor();
        let mut degenerate = 0usize;
        let mut since_refactor = 0usize;
        loop {
            if since_refactor >= REFACTOR_EVERY {
                self.refactor();
                self.recompute_basics();
                since_refactor = 0;
            }
            let phase_one = self.infeasibility();
            let cb = self.basic_costs(phase_one.as_deref());
            let y = self.btran(&cb);
            let bland = degenerate >= DEGENERATE_BEFORE_BLAND;

            // entering variable and its direction
            let mut entering: Option<(Var, f64, f64)> = None;
            let mut consider = |v: Var, d: f64, status: Status, lo: f64, hi: f64| {
                if lo == hi {
                    return;
                }
                let dir = match status {
                    Status::Lower if d < -DUAL_TOL => 1.0,
                    Status::Upper if d > DUAL_TOL => -1.0,
                    _ => return,
                };
                let better = match entering {
                    None => true,
                    Some(_) if bland => false,
                    Some((_, best, _)) => d.abs() > best.abs(),
                };
                if better {
                    entering = Some((v, d, dir));
                }
            };
            for j in 0..self.cols.len() {
                if matches!(self.col_status[j], Status::Basic(_)) {
                    continue;
                }
                let c = if phase_one.is_some() { 0.0 } else { self.cost[j] };
                let d = c - self.dot(&y, j);
                consider(Var::Col(j), d, self.col_status[j], self.lower[j], self.upper[j]);
            }
            for i in 0..self.rhs.len() {
                if matches!(self.row_status[i], Status::Basic(_)) {
                    continue;
                }
                let (lo, hi) = self.var_bounds(Var::Slack(i));
                consider(Var::Slack(i), -y[i], self.row_status[i], lo, hi);
            }
            let Some((q, _, dir)) = entering else {
                if since_refactor > 0 {
                    // confirm on fresh factors and values before stopping
                    self.refactor();
                    self.recompute_basics();
                    since_refactor = 0;
                    continue;
                }
                return match phase_one {
                    Some(_) => Err(Error::Infeasible),
                    None => Ok(()),
                };
            };

            let alpha = self.ftran(&self.dense_column(q));
            let (ql, qu) = self.var_bounds(q);
            let mut step = qu - ql;
            let mut leave: Option<(usize, Status)> = None;
            let mut leave_abs = 0.0;
            for (p, &v) in self.basis.iter().enumerate() {
                let a = alpha[p];
                if a.abs() < PIVOT_TOL {
                    continue;
                }
                let delta = -dir * a;
                let (l, u) = self.var_bounds(v);
                let x = self.var_value(v);
                let limit = if delta < 0.0 {
                    if x > u + PRIMAL_TOL {
                        Some(((x - u) / -delta, Status::Upper))
                    } else if x >= l - PRIMAL_TOL {
                        Some(((x - l).max(0.0) / -delta, Status::Lower))
                    } else {
                        None
                    }
                } else if x < l - PRIMAL_TOL {
                    Some(((l - x) / delta, Status::Lower))
                } else if x <= u + PRIMAL_TOL && u.is_finite() {
                    Some(((u - x).max(0.0) / delta, Status::Upper))
                } else {
                    None
                };
                let Some((t, st)) = limit else { continue };
                let take = if t < step - 1e-12 {
                    true
                } else if t <= step + 1e-12 && leave.is_some() {
                    if bland {
                        false
                    } else {
                        a.abs() > leave_abs
                    }
                } else {
                    false
                };
                if take {
                    step = t;
                    leave = Some((p, st));
                    leave_abs = a.abs();
                }
            }
            if !step.is_finite() {
                return Err(Error::Unbounded);
            }
            self.iterations += 1;
            since_refactor += 1;
            if step <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }

            let xq = self.var_value(q) + dir * step;
            for (p, v) in self.basis.clone().into_iter().enumerate() {
                if alpha[p] != 0.0 {
                    let x = self.var_value(v) - dir * step * alpha[p];
                    self.set_value(v, x);
                }
            }
            match leave {
                None => {
                    // bound flip
                    self.set_value(q, if dir > 0.0 { qu } else { ql });
                    self.set_status(q, if dir > 0.0 { Status::Upper } else { Status::Lower });
                }
                Some((p, st)) => {
                    let out = self.basis[p];
                    let (l, u) = self.var_bounds(out);
                    self.set_value(out, if st == Status::Upper { u } else { l });
                    self.set_status(out, st);
                    self.set_value(q, xq);
                    self.set_status(q, Status::Basic(p));
                    self.basis[p] = q;
                    let entries = alpha
                        .iter()
                        .enumerate()
                        .filter(|&(i, &x)| i != p && x != 0.0)
                        .map(|(i, &x)| (i, x))
                        .collect();
                    let f = self.factor.as_mut().unwrap();
                    f.etas.push(Eta {
                        pos: p,
                        pivot: alpha[p],
                        entries,
                    });
                }
            }
        }
    }
}
