//! Exact two-phase simplex over the rationals (Bland's rule).

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal(Q),
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    rhs: Vec<Q>,
    basis: Vec<usize>,
    /// Reduced costs of a maximization; optimal when all are nonnegative.
    cost: Vec<Q>,
    value: Q,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for x in self.rows[r].iter_mut() {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
            self.rhs[r] /= &p;
        }
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        let f = self.cost[c].clone();
        if !f.is_zero() {
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.value -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Runs the simplex restricted to columns `< limit`. Returns false if
    /// unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(c) = (0..limit).find(|&j| self.cost[j].is_negative()) else { return true };
            let mut best: Option<(usize, Q)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if a.is_positive() {
                    let ratio = &self.rhs[i] / a;
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    fn set_objective(&mut self, c: &[Q]) {
        let width = self.cost.len();
        self.cost = (0..width).map(|j| if j < c.len() { -c[j].clone() } else { Q::zero() }).collect();
        self.value = Q::zero();
        for i in 0..self.rows.len() {
            let b = self.basis[i];
            let f = self.cost[b].clone();
            if !f.is_zero() {
                for (x, y) in self.cost.iter_mut().zip(&self.rows[i]) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
                self.value -= &f * &self.rhs[i];
            }
        }
    }
}

/// Maximizes `c·x` subject to `a x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let neg = b[i].is_negative();
        let mut row: Vec<Q> = a[i].iter().map(|x| if neg { -x.clone() } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        rows.push(row);
        rhs.push(if neg { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect(), cost: vec![Q::zero(); n + m], value: Q::zero() };
    let phase1: Vec<Q> = (0..n + m).map(|j| if j < n { Q::zero() } else { -Q::one() }).collect();
    t.set_objective(&phase1);
    t.optimize(n + m);
    if !t.value.is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }
    t.cost.truncate(n);
    t.set_objective(c);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }
    LpOutcome::Optimal(t.value.clone())
}

pub fn feasible(a: &[Vec<Q>], b: &[Q], n: usize) -> bool {
    !matches!(maximize(a, b, &vec![Q::zero(); n]), LpOutcome::Infeasible)
}
