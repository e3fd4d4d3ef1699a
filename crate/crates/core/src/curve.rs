//! Green's functions on a curve.
//!
//! For `Sigma = {t_i ord_{p_i}}` on a curve with `deg omega > 0`,
//!
//! ```text
//! phi = A max { 1 + sum_i t_i^{-1} log|m_{p_i}|, 0 },   A sum_i t_i^{-1} = deg omega
//! ```
//!
//! and at `v = t ord_p` the term `log|m_{p_i}|` evaluates to `-t` when
//! `p = p_i` and to `0` otherwise.

use crate::error::{Error, Result};
use crate::scalar::ExactField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSigma<F> {
    degree: F,
    points: Vec<(String, F)>,
    a: F,
}

impl<F: ExactField> CurveSigma<F> {
    /// Valuations sharing a point are dominated by the one with the smallest
    /// scale; only that one is kept. Point order follows first appearance.
    pub fn new(degree: F, points: Vec<(String, F)>) -> Result<Self> {
        if !degree.is_sign_positive() {
            return Err(Error::InvalidCurveData(format!(
                "degree must be positive, got {degree}"
            )));
        }
        if points.is_empty() {
            return Err(Error::InvalidCurveData("no points given".into()));
        }
        let mut kept: Vec<(String, F)> = Vec::new();
        for (label, t) in points {
            if !t.is_sign_positive() {
                return Err(Error::InvalidCurveData(format!(
                    "scale of `{label}` must be positive, got {t}"
                )));
            }
            if !t.compatible(&degree) {
                return Err(Error::InvalidCurveData(format!(
                    "scale of `{label}` lives in a different field than the degree"
                )));
            }
            match kept.iter_mut().find(|(l, _)| *l == label) {
                Some(entry) => {
                    if t < entry.1 {
                        entry.1 = t;
                    }
                }
                None => kept.push((label, t)),
            }
        }
        let mut inverse_sum = F::zero();
        for (_, t) in &kept {
            inverse_sum = inverse_sum.try_add(&t.try_inv()?)?;
        }
        let a = degree.try_mul(&inverse_sum.try_inv()?)?;
        Ok(CurveSigma {
            degree,
            points: kept,
            a,
        })
    }

    pub fn degree(&self) -> &F {
        &self.degree
    }

    pub fn points(&self) -> &[(String, F)] {
        &self.points
    }

    /// The constant `A` with `A sum_i t_i^{-1} = deg omega`.
    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn scale_of(&self, label: &str) -> Option<&F> {
        self.points.iter().find(|(l, _)| l == label).map(|(_, t)| t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveGreenFunction<F> {
    sigma: CurveSigma<F>,
}

pub fn green_curve<F: ExactField>(cs: &CurveSigma<F>) -> CurveGreenFunction<F> {
    CurveGreenFunction { sigma: cs.clone() }
}

impl<F: ExactField> CurveGreenFunction<F> {
    pub fn sigma(&self) -> &CurveSigma<F> {
        &self.sigma
    }

    /// `sup phi = A`, attained at the trivial valuation.
    pub fn tau(&self) -> &F {
        &self.sigma.a
    }

    pub fn is_rational_pl(&self) -> bool {
        self.sigma.degree.is_rational() && self.sigma.points.iter().all(|(_, t)| t.is_rational())
    }

    /// Value at `t ord_p`; a label outside `Sigma` gives `A`.
    pub fn evaluate(&self, label: &str, t: &F) -> Result<F> {
        evaluate_curve(&self.sigma, label, t)
    }
}

pub fn evaluate_curve<F: ExactField>(cs: &CurveSigma<F>, label: &str, t: &F) -> Result<F> {
    if t.is_sign_negative() {
        return Err(Error::InvalidCurveData(format!(
            "evaluation scale must be nonnegative, got {t}"
        )));
    }
    let Some(tj) = cs.scale_of(label) else {
        return Ok(cs.a.clone());
    };
    let inner = F::one().try_sub(&t.try_mul(&tj.try_inv()?)?)?;
    let value = cs.a.try_mul(&inner)?;
    Ok(if value.is_sign_negative() { F::zero() } else { value })
}
