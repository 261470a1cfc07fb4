use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Feasibility tolerance on equilibrated rows.
pub const FEASIBILITY_TOL: f64 = 1e-9;
/// Smallest admissible pivot magnitude.
pub const PIVOT_TOL: f64 = 1e-11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bound {
    /// `x ≥ 0`
    NonNegative,
    /// unrestricted
    Free,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sense {
    Maximize,
    Minimize,
}

/// `max/min cᵀx` subject to `A_eq x = b_eq`, `A_le x ≤ b_le` and
/// per-variable bounds.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    sense: Sense,
    objective: Vec<f64>,
    eq: Vec<(Vec<f64>, f64)>,
    le: Vec<(Vec<f64>, f64)>,
    bounds: Vec<Bound>,
}

impl LinearProgram {
    pub fn maximize(objective: Vec<f64>) -> Self {
        Self::with_sense(Sense::Maximize, objective)
    }

    pub fn minimize(objective: Vec<f64>) -> Self {
        Self::with_sense(Sense::Minimize, objective)
    }

    fn with_sense(sense: Sense, objective: Vec<f64>) -> Self {
        let n = objective.len();
        LinearProgram { sense, objective, eq: Vec::new(), le: Vec::new(), bounds: vec![Bound::NonNegative; n] }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds `row · x = rhs`.
    pub fn eq(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.eq.push((row, rhs));
        self
    }

    /// Adds `row · x ≤ rhs`.
    pub fn le(mut self, row: Vec<f64>, rhs: f64) -> Self {
        self.le.push((row, rhs));
        self
    }

    /// Adds `row · x ≥ rhs`.
    pub fn ge(self, row: Vec<f64>, rhs: f64) -> Self {
        self.le(row.into_iter().map(|v| -v).collect(), -rhs)
    }

    pub fn bound(mut self, var: usize, bound: Bound) -> Self {
        self.bounds[var] = bound;
        self
    }

    pub fn free(self, var: usize) -> Self {
        self.bound(var, Bound::Free)
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::Validation("linear program has no variables".into()));
        }
        for (row, rhs) in self.eq.iter().chain(&self.le) {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "constraint row has {} coefficients for {n} variables",
                    row.len()
                )));
            }
            if !rhs.is_finite() || row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Validation("constraint has non-finite entries".into()));
            }
        }
        if self.objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("objective has non-finite entries".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point (meaningful only when optimal).
    pub x: Vec<f64>,
    /// Objective at `x` in the caller's sense (`±∞` when unbounded).
    pub objective: f64,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `(rows + 1) × (cols + 1)`, row-major; last row holds reduced costs,
    /// last column the right-hand side.
    data: Vec<f64>,
    basis: Vec<usize>,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * (self.cols + 1) + c]
    }

    fn rhs(&self, r: usize) -> f64 {
        self.at(r, self.cols)
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let w = self.cols + 1;
        let inv = 1.0 / self.data[pr * w + pc];
        for c in 0..w {
            self.data[pr * w + c] *= inv;
        }
        self.data[pr * w + pc] = 1.0;
        let pivot_row: Vec<f64> = self.data[pr * w..(pr + 1) * w].to_vec();
        for r in 0..=self.rows {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f != 0.0 {
                let row = &mut self.data[r * w..(r + 1) * w];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                row[pc] = 0.0;
            }
        }
        self.basis[pr] = pc;
    }

    /// Loads `cost` into the objective row and prices out the basis.
    fn set_costs(&mut self, cost: &[f64]) {
        let w = self.cols + 1;
        let m = self.rows;
        self.data[m * w..m * w + self.cols].copy_from_slice(&cost[..self.cols]);
        self.data[m * w + self.cols] = 0.0;
        for r in 0..m {
            let cb = cost[self.basis[r]];
            if cb != 0.0 {
                for c in 0..w {
                    self.data[m * w + c] -= cb * self.data[r * w + c];
                }
            }
        }
    }

    /// Bland-rule simplex over the columns `allowed`; returns `false` when
    /// unbounded.
    fn run(&mut self, allowed: usize, max_iter: usize) -> Result<bool> {
        for _ in 0..max_iter {
            let m = self.rows;
            let Some(pc) = (0..allowed).find(|&c| self.at(m, c) < -FEASIBILITY_TOL) else {
                return Ok(true);
            };
            let mut best: Option<(f64, usize, usize)> = None;
            for r in 0..m {
                let a = self.at(r, pc);
                if a > PIVOT_TOL {
                    let ratio = self.rhs(r) / a;
                    let better = match best {
                        None => true,
                        Some((br, _, bb)) => {
                            ratio < br - 1e-12 * br.abs().max(1.0)
                                || (ratio <= br + 1e-12 * br.abs().max(1.0) && self.basis[r] < bb)
                        }
                    };
                    if better {
                        best = Some((ratio, r, self.basis[r]));
                    }
                }
            }
            match best {
                None => return Ok(false),
                Some((_, pr, _)) => self.pivot(pr, pc),
            }
        }
        Err(Error::Numerical(format!("simplex exceeded {max_iter} iterations")))
    }
}

/// Two-phase dense simplex with Bland's anti-cycling rule.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution> {
    lp.validate()?;
    let n = lp.num_vars();

    // Standard-form columns: each free variable splits into (x⁺, x⁻).
    let mut col_of = Vec::with_capacity(n);
    let mut ncols = 0;
    for b in &lp.bounds {
        col_of.push(ncols);
        ncols += if *b == Bound::Free { 2 } else { 1 };
    }
    let n_struct = ncols;
    let n_slack = lp.le.len();
    let expand = |row: &[f64], out: &mut Vec<f64>| {
        for (j, &v) in row.iter().enumerate() {
            out[col_of[j]] = v;
            if lp.bounds[j] == Bound::Free {
                out[col_of[j] + 1] = -v;
            }
        }
    };

    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    let constraints = lp.eq.iter().map(|e| (e, None)).chain(lp.le.iter().enumerate().map(|(i, e)| (e, Some(i))));
    for ((row, rhs), slack) in constraints {
        let mut full = vec![0.0; n_struct + n_slack];
        expand(row, &mut full);
        if let Some(i) = slack {
            full[n_struct + i] = 1.0;
        }
        let scale = full.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if scale == 0.0 {
            if rhs.abs() > FEASIBILITY_TOL {
                return Ok(infeasible(n));
            }
            continue;
        }
        let (mut full, mut rhs) = (full, *rhs);
        for v in &mut full {
            *v /= scale;
        }
        rhs /= scale;
        if rhs < 0.0 {
            for v in &mut full {
                *v = -*v;
            }
            rhs = -rhs;
        }
        rows.push((full, rhs));
    }

    let m = rows.len();
    let nvar = n_struct + n_slack;
    let cols = nvar + m;
    let w = cols + 1;
    let mut data = vec![0.0; (m + 1) * w];
    for (r, (row, rhs)) in rows.iter().enumerate() {
        data[r * w..r * w + nvar].copy_from_slice(row);
        data[r * w + nvar + r] = 1.0;
        data[r * w + cols] = *rhs;
    }
    let mut t = Tableau { rows: m, cols, data, basis: (nvar..nvar + m).collect() };
    let max_iter = 50_000 + 50 * (m + cols);

    // Phase 1: minimise the sum of artificials.
    let mut cost1 = vec![0.0; cols];
    for c in cost1.iter_mut().skip(nvar) {
        *c = 1.0;
    }
    t.set_costs(&cost1);
    t.run(cols, max_iter)?;
    let rhs_scale = 1.0 + rows.iter().fold(0.0f64, |a, (_, b)| a.max(b.abs()));
    if -t.rhs(m) > FEASIBILITY_TOL * rhs_scale {
        return Ok(infeasible(n));
    }

    // Drive artificials out of the basis; rows where that fails are redundant.
    let mut r = 0;
    while r < t.rows {
        if t.basis[r] >= nvar {
            if let Some(c) = (0..nvar).find(|&c| t.at(r, c).abs() > 1e-9) {
                t.pivot(r, c);
            } else {
                remove_row(&mut t, r);
                continue;
            }
        }
        r += 1;
    }

    // Phase 2 over the original columns only.
    let sign = if lp.sense == Sense::Maximize { -1.0 } else { 1.0 };
    let mut cost2 = vec![0.0; t.cols];
    for (j, &c) in lp.objective.iter().enumerate() {
        cost2[col_of[j]] = sign * c;
        if lp.bounds[j] == Bound::Free {
            cost2[col_of[j] + 1] = -sign * c;
        }
    }
    t.set_costs(&cost2);
    if !t.run(nvar, max_iter)? {
        return Ok(LpSolution { status: LpStatus::Unbounded, x: vec![0.0; n], objective: -sign * f64::INFINITY });
    }

    let mut std_x = vec![0.0; t.cols];
    for (r, &b) in t.basis.iter().enumerate() {
        std_x[b] = t.rhs(r).max(0.0);
    }
    let x: Vec<f64> = (0..n)
        .map(|j| {
            let mut v = std_x[col_of[j]];
            if lp.bounds[j] == Bound::Free {
                v -= std_x[col_of[j] + 1];
            }
            v
        })
        .collect();
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Ok(LpSolution { status: LpStatus::Optimal, x, objective })
}

fn infeasible(n: usize) -> LpSolution {
    LpSolution { status: LpStatus::Infeasible, x: vec![0.0; n], objective: f64::NAN }
}

fn remove_row(t: &mut Tableau, r: usize) {
    let w = t.cols + 1;
    t.data.drain(r * w..(r + 1) * w);
    t.basis.remove(r);
    t.rows -= 1;
}
