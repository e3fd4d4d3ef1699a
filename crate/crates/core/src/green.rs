//! Green's functions of finite sets of real divisorial valuations on a
//! surface.
//!
//! For `Sigma = {t_a ord_{E_a}}` put `D = sum t_a^{-1} E_a`. The Green's
//! function is determined by the concave, decreasing family of
//! antieffective divisors
//!
//! ```text
//! B_lambda = -(N(omega - lambda D) + lambda D)   for 0 <= lambda <= tau,
//! B_lambda = 0                                    for lambda <= 0,
//! ```
//!
//! and equals `max_i { psi_{B_i} + lambda_i }` over the breakpoints of the
//! family, where `psi_B(t ord_E) = t * ord_E(B)`. Since `lambda ->
//! psi_{B_lambda}(v) + lambda` is concave and piecewise affine, its maximum
//! over `[0, tau]` is attained at a breakpoint.

use crate::error::{Error, Result};
use crate::lattice::{Divisor, DivisorClass, SurfaceLattice};
use crate::scalar::ExactField;
use crate::valuation::RealDivisorialValuation;
use crate::zariski::{pl_family, PLFamily};

/// A finite set of real divisorial valuations with distinct divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSet<F> {
    valuations: Vec<RealDivisorialValuation<F>>,
    primes: Vec<usize>,
    divisor: Divisor<F>,
}

impl<F: ExactField> SigmaSet<F> {
    pub fn new(
        lattice: &SurfaceLattice<F>,
        valuations: Vec<RealDivisorialValuation<F>>,
    ) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::InvalidSigma("empty valuation set".into()));
        }
        let mut primes = Vec::with_capacity(valuations.len());
        let mut raw = vec![F::zero(); lattice.primes().len()];
        for v in &valuations {
            if !v.scale.is_sign_positive() {
                return Err(Error::InvalidSigma(format!(
                    "scale {} of ord_{} must be positive",
                    v.scale, v.divisor
                )));
            }
            lattice.check_scalar(&v.scale)?;
            let p = lattice.prime_index(&v.divisor)?;
            if primes.contains(&p) {
                return Err(Error::InvalidSigma(format!(
                    "divisor {} listed twice",
                    v.divisor
                )));
            }
            primes.push(p);
            raw[p] = F::one() / &v.scale;
        }
        let divisor = Divisor::new(raw);
        for (v, &p) in valuations.iter().zip(&primes) {
            if !(v.scale.clone() * divisor.coeff(p)).is_one() {
                return Err(Error::InvalidSigma(format!(
                    "ord_{} is not normalized on D",
                    v.divisor
                )));
            }
        }
        Ok(SigmaSet {
            valuations,
            primes,
            divisor,
        })
    }

    pub fn valuations(&self) -> &[RealDivisorialValuation<F>] {
        &self.valuations
    }

    /// Prime indices of the divisors, in input order.
    pub fn primes(&self) -> &[usize] {
        &self.primes
    }

    /// `D = sum t_a^{-1} E_a`.
    pub fn divisor(&self) -> &Divisor<F> {
        &self.divisor
    }

    pub fn is_divisorial(&self) -> bool {
        self.valuations.iter().all(|v| v.scale.is_rational())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenFunction<F> {
    breakpoints: Vec<F>,
    divisors: Vec<Divisor<F>>,
    sigma: SigmaSet<F>,
    omega: DivisorClass<F>,
    prime_labels: Vec<String>,
    family: PLFamily<F>,
}

/// Builds the Green's function of `Sigma` with respect to the ample class
/// `omega`.
pub fn green_from_sigma<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    omega: &DivisorClass<F>,
    sigma: &SigmaSet<F>,
) -> Result<GreenFunction<F>> {
    let d = sigma.divisor();
    let family = pl_family(lattice, omega, &lattice.class_of(d))?;
    let breakpoints = family.breakpoints();
    let divisors = breakpoints
        .iter()
        .zip(family.breakpoint_values())
        .map(|(lambda, n)| n.add_scaled(lambda, d).scale(&-F::one()))
        .collect();
    Ok(GreenFunction {
        breakpoints,
        divisors,
        sigma: sigma.clone(),
        omega: omega.clone(),
        prime_labels: lattice.primes().iter().map(|p| p.label.clone()).collect(),
        family,
    })
}

impl<F: ExactField> GreenFunction<F> {
    /// `0 = lambda_0 < ... < lambda_N = tau`.
    pub fn breakpoints(&self) -> &[F] {
        &self.breakpoints
    }

    /// `B_i` at each breakpoint; `B_0 = 0`.
    pub fn divisors(&self) -> &[Divisor<F>] {
        &self.divisors
    }

    pub fn sigma(&self) -> &SigmaSet<F> {
        &self.sigma
    }

    pub fn family(&self) -> &PLFamily<F> {
        &self.family
    }

    pub fn prime_labels(&self) -> &[String] {
        &self.prime_labels
    }

    /// `sup phi = tau(Sigma)`, the pseudoeffective threshold.
    pub fn tau(&self) -> &F {
        self.breakpoints.last().expect("breakpoints start at 0")
    }

    fn prime(&self, label: &str) -> Result<usize> {
        self.prime_labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownDivisor(label.to_string()))
    }

    pub fn evaluate(&self, v: &RealDivisorialValuation<F>) -> Result<F> {
        self.evaluate_at(&v.divisor, &v.scale)
    }

    /// `phi(t ord_E) = max_i { t * ord_E(B_i) + lambda_i }`; `t = 0` gives the
    /// value at the trivial valuation.
    pub fn evaluate_at(&self, divisor: &str, t: &F) -> Result<F> {
        if t.is_sign_negative() {
            return Err(Error::InvalidSigma(format!("negative scale {t}")));
        }
        let p = self.prime(divisor)?;
        Ok(self
            .breakpoints
            .iter()
            .zip(&self.divisors)
            .map(|(lambda, b)| t.clone() * b.coeff(p) + lambda)
            .max()
            .expect("nonempty"))
    }

    /// `B_lambda`: zero for `lambda <= 0`, affine between breakpoints.
    pub fn slice(&self, lambda: &F) -> Result<Divisor<F>> {
        let n = self.family.value_at(lambda)?;
        if !lambda.is_sign_positive() {
            return Ok(Divisor::zero(self.prime_labels.len()));
        }
        Ok(n.add_scaled(lambda, self.sigma.divisor()).scale(&-F::one()))
    }

    /// Whether `phi` is piecewise linear with rational data. Decided by the
    /// rationality of `tau`; only meaningful for rational `omega` and
    /// rational scales.
    pub fn is_rational_pl(&self) -> Result<bool> {
        if !self.omega.is_rational() {
            return Err(Error::ClassificationUnavailable(
                "omega has irrational coefficients".into(),
            ));
        }
        if !self.sigma.is_divisorial() {
            return Err(Error::ClassificationUnavailable(
                "some valuation has an irrational scale".into(),
            ));
        }
        Ok(self.tau().is_rational())
    }

    /// Divisorial part of the center: `Supp N(omega - tau D)` together with
    /// the divisors of `Sigma`, in prime order.
    pub fn center_divisorial(&self) -> Vec<String> {
        let last = self
            .family
            .breakpoint_values()
            .pop()
            .unwrap_or_else(|| Divisor::zero(self.prime_labels.len()));
        let mut idx = last.support();
        idx.extend(self.sigma.primes());
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter()
            .map(|i| self.prime_labels[i].clone())
            .collect()
    }

    /// `divisor,t,phi` rows for each divisor over the grid of scales.
    pub fn profile_csv(&self, divisors: &[String], grid: &[F]) -> Result<String> {
        let mut out = String::from("divisor,t,phi\n");
        for d in divisors {
            for t in grid {
                let v = self.evaluate_at(d, t)?;
                out.push_str(&format!("{d},{t},{v}\n"));
            }
        }
        Ok(out)
    }
}
