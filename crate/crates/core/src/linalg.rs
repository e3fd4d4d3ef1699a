//! Dense exact linear algebra: Gaussian elimination and the inertia of a
//! symmetric matrix by congruence diagonalization.

#![allow(clippy::needless_range_loop)]

use crate::scalar::ExactField;

pub type Matrix<F> = Vec<Vec<F>>;

/// Signature counts of a symmetric bilinear form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Solves `a x = b` for square nonsingular `a`; `None` when singular.
pub fn solve<F: ExactField>(a: &[Vec<F>], b: &[F]) -> Option<Vec<F>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut m: Matrix<F> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = F::one() / &m[col][col];
        for c in col..=n {
            m[col][c] = m[col][c].clone() * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let delta = factor.clone() * &m[col][c];
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Row rank of an arbitrary rectangular matrix.
pub fn rank<F: ExactField>(rows: &[Vec<F>]) -> usize {
    let mut m: Matrix<F> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / &m[rank][col];
            for c in col..ncols {
                let delta = factor.clone() * &m[rank][c];
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Inertia of a symmetric matrix via symmetric elimination `L D L^T`.
///
/// When no diagonal pivot is available but an off-diagonal entry `a_ij` is,
/// row/column `j` is added to row/column `i`, which creates the diagonal
/// entry `2 a_ij`. Sylvester's law makes the sign counts of `D` the answer.
pub fn inertia<F: ExactField>(sym: &[Vec<F>]) -> Inertia {
    let n = sym.len();
    let mut m: Matrix<F> = sym.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    let mut diag: Vec<F> = Vec::with_capacity(n);
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !m[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().copied().find_map(|i| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != i && !m[i][j].is_zero())
                        .map(|j| (i, j))
                });
                let Some((i, j)) = pair else {
                    // remaining block is identically zero
                    diag.extend(active.iter().map(|_| F::zero()));
                    break;
                };
                for &k in &active {
                    let v = m[i][k].clone() + &m[j][k];
                    m[i][k] = v;
                }
                for &k in &active {
                    let v = m[k][i].clone() + &m[k][j];
                    m[k][i] = v;
                }
                i
            }
        };
        let pv = m[p][p].clone();
        active.retain(|&k| k != p);
        for &r in &active {
            if m[r][p].is_zero() {
                continue;
            }
            let factor = m[r][p].clone() / &pv;
            for &c in &active {
                let delta = factor.clone() * &m[p][c];
                m[r][c] = m[r][c].clone() - delta;
            }
        }
        for &r in &active {
            m[r][p] = F::zero();
            m[p][r] = F::zero();
        }
        diag.push(pv);
    }
    let positive = diag.iter().filter(|d| d.is_sign_positive()).count();
    let negative = diag.iter().filter(|d| d.is_sign_negative()).count();
    Inertia {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

pub fn is_negative_definite<F: ExactField>(sym: &[Vec<F>]) -> bool {
    inertia(sym).negative == sym.len()
}

pub fn is_symmetric<F: ExactField>(m: &[Vec<F>]) -> bool {
    let n = m.len();
    m.iter().all(|r| r.len() == n) && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

pub fn mat_vec<F: ExactField>(m: &[Vec<F>], v: &[F]) -> Vec<F> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn dot<F: ExactField>(x: &[F], y: &[F]) -> F {
    x.iter()
        .zip(y)
        .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b)
}
