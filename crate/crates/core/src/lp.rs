//! Exact two-phase simplex in standard equality form.
//!
//! Bland's rule is used for both the entering and leaving variable, so the
//! method cannot cycle. Problems here are tiny (a handful of generators of a
//! surface cone), so the tableau is dense and reduced costs are recomputed
//! from scratch every iteration.

use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome<F> {
    Optimal { value: F, x: Vec<F> },
    Infeasible,
    Unbounded,
}

struct Tableau<F> {
    rows: Vec<Vec<F>>,
    rhs: Vec<F>,
    basis: Vec<usize>,
}

impl<F: ExactField> Tableau<F> {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = F::one() / &self.rows[row][col];
        for v in self.rows[row].iter_mut() {
            *v = v.clone() * &inv;
        }
        self.rhs[row] = self.rhs[row].clone() * &inv;
        for r in 0..self.rows.len() {
            if r == row || self.rows[r][col].is_zero() {
                continue;
            }
            let factor = self.rows[r][col].clone();
            for c in 0..self.rows[r].len() {
                let delta = factor.clone() * &self.rows[row][c];
                self.rows[r][c] = self.rows[r][c].clone() - delta;
            }
            let delta = factor * &self.rhs[row];
            self.rhs[r] = self.rhs[r].clone() - delta;
        }
        self.basis[row] = col;
    }

    /// Maximizes `cost` over the columns `< allowed`. Returns `false` when
    /// unbounded.
    fn optimize(&mut self, cost: &[F], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    reduced = reduced - cost[b].clone() * &self.rows[i][j];
                }
                reduced.is_sign_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, F)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][col].is_sign_positive() {
                    continue;
                }
                let ratio = self.rhs[i].clone() / &self.rows[i][col];
                let better = match &leave {
                    None => true,
                    Some((r, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn objective(&self, cost: &[F]) -> F {
        self.basis
            .iter()
            .zip(&self.rhs)
            .fold(F::zero(), |acc, (&b, v)| acc + cost[b].clone() * v)
    }
}

/// Maximizes `c . x` subject to `A x = b`, `x >= 0`.
pub fn maximize<F: ExactField>(a: &[Vec<F>], b: &[F], c: &[F]) -> LpOutcome<F> {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m, "constraint count");
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "constraint width");
        let flip = bi.is_sign_negative();
        let mut r: Vec<F> = row
            .iter()
            .map(|v| if flip { -v.clone() } else { v.clone() })
            .collect();
        r.extend((0..m).map(|k| if k == i { F::one() } else { F::zero() }));
        rows.push(r);
        rhs.push(if flip { -bi.clone() } else { bi.clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    let phase1: Vec<F> = (0..n + m)
        .map(|j| if j < n { F::zero() } else { -F::one() })
        .collect();
    t.optimize(&phase1, n + m);
    if !t.objective(&phase1).is_zero() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] < n {
            i += 1;
            continue;
        }
        if let Some(col) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
            t.pivot(i, col);
            i += 1;
        } else {
            t.rows.remove(i);
            t.rhs.remove(i);
            t.basis.remove(i);
        }
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| F::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![F::zero(); n];
    for (&bcol, v) in t.basis.iter().zip(&t.rhs) {
        x[bcol] = v.clone();
    }
    LpOutcome::Optimal {
        value: t.objective(&cost),
        x,
    }
}

/// Feasibility of `A x = b`, `x >= 0`, with a witness.
pub fn feasible_point<F: ExactField>(a: &[Vec<F>], b: &[F], n: usize) -> Option<Vec<F>> {
    match maximize(a, b, &vec![F::zero(); n]) {
        LpOutcome::Optimal { x, .. } => Some(x),
        _ => None,
    }
}
