//! Zariski decompositions on surfaces, pseudoeffective thresholds along
//! rays, and the piecewise-affine family `lambda -> N(omega - lambda D)`.
//!
//! The decomposition is computed by Fujita's iteration: start from the
//! curves the class meets negatively, solve the (negative definite) Gram
//! system that makes the positive part orthogonal to the support, and
//! enlarge the support until the positive part is nef against every
//! declared curve.
//!
//! The chamber walk runs the same iteration on the right limit
//! `omega - (lambda + eps) D`: signs are compared lexicographically on
//! `(value, slope)` pairs, which yields the support on the open chamber to
//! the right of `lambda` even when several walls coincide.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{ConeOracle, Divisor, DivisorClass, SurfaceLattice};
use crate::linalg::{self, Matrix};
use crate::lp::{self, LpOutcome};
use crate::scalar::{solve_quadratic, ExactField, ScalarError};
use crate::valuation::RealDivisorialValuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Certificate {
    pub gram_negdef: bool,
    pub orthogonality: bool,
    pub positive_nef: bool,
    pub reassembly: bool,
    pub negative_effective: bool,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.gram_negdef
            && self.orthogonality
            && self.positive_nef
            && self.reassembly
            && self.negative_effective
    }

    fn describe_failures(&self) -> String {
        let checks = [
            (self.gram_negdef, "support Gram matrix not negative definite"),
            (self.orthogonality, "positive part not orthogonal to support"),
            (self.positive_nef, "positive part not nef"),
            (self.reassembly, "P + N differs from the input"),
            (self.negative_effective, "negative part not effective"),
        ];
        checks
            .iter()
            .filter(|(ok, _)| !ok)
            .map(|(_, msg)| *msg)
            .collect::<Vec<_>>()
            .join("; ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiDecomposition<F> {
    pub input: DivisorClass<F>,
    pub positive: DivisorClass<F>,
    /// Supported on declared curves (prime indices below `curves().len()`).
    pub negative: Divisor<F>,
    pub certificate: Certificate,
}

impl<F: ExactField> ZariskiDecomposition<F> {
    pub fn support(&self) -> Vec<usize> {
        self.negative.support()
    }

    pub fn support_labels(&self, lattice: &SurfaceLattice<F>) -> Vec<String> {
        self.support()
            .into_iter()
            .map(|i| lattice.prime_label(i).to_string())
            .collect()
    }
}

/// Re-verifies a claimed decomposition `theta = P + N` from scratch.
pub fn certify<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    theta: &DivisorClass<F>,
    positive: &DivisorClass<F>,
    negative: &Divisor<F>,
) -> Certificate {
    let support = negative.support();
    let classes: Vec<&DivisorClass<F>> = support
        .iter()
        .map(|&i| &lattice.primes()[i].class)
        .collect();
    let gram_negdef = linalg::is_negative_definite(&lattice.gram_of(&classes));
    let orthogonality = classes
        .iter()
        .all(|c| lattice.dot(positive, c).is_zero());
    let positive_nef = lattice.is_nef(positive).unwrap_or(false);
    let reassembly = &(positive + &lattice.class_of(negative)) == theta;
    let negative_effective = negative.is_effective();
    Certificate {
        gram_negdef,
        orthogonality,
        positive_nef,
        reassembly,
        negative_effective,
    }
}

fn lex_sign<F: ExactField>(value: &F, slope: &F) -> Ordering {
    match value.cmp(&F::zero()) {
        Ordering::Equal => slope.cmp(&F::zero()),
        o => o,
    }
}

/// Fujita's iteration for `theta0 + eps * theta1`, eps infinitesimal.
///
/// Returns the support (curve indices) and the coefficient values and slopes
/// of the negative part on it.
struct Fujita<F> {
    support: Vec<usize>,
    values: Vec<F>,
    slopes: Vec<F>,
}

fn fujita<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    theta0: &DivisorClass<F>,
    theta1: &DivisorClass<F>,
) -> Result<Fujita<F>> {
    let curves = lattice.curves();
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..=curves.len() {
        let classes: Vec<&DivisorClass<F>> = support.iter().map(|&i| &curves[i].class).collect();
        let (values, slopes) = if support.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let gram: Matrix<F> = lattice.gram_of(&classes);
            if !linalg::is_negative_definite(&gram) {
                return Err(Error::GramNotNegativeDefinite(labels_of(lattice, &support)));
            }
            let rhs0: Vec<F> = classes.iter().map(|c| lattice.dot(theta0, c)).collect();
            let rhs1: Vec<F> = classes.iter().map(|c| lattice.dot(theta1, c)).collect();
            let v = linalg::solve(&gram, &rhs0).expect("negative definite Gram is invertible");
            let s = linalg::solve(&gram, &rhs1).expect("negative definite Gram is invertible");
            (v, s)
        };
        let mut p0 = theta0.clone();
        let mut p1 = theta1.clone();
        for (k, c) in classes.iter().enumerate() {
            p0 = p0.add_scaled(&-values[k].clone(), c);
            p1 = p1.add_scaled(&-slopes[k].clone(), c);
        }
        let entering: Vec<usize> = (0..curves.len())
            .filter(|i| !support.contains(i))
            .filter(|&i| {
                let c = &curves[i].class;
                lex_sign(&lattice.dot(&p0, c), &lattice.dot(&p1, c)) == Ordering::Less
            })
            .collect();
        if entering.is_empty() {
            if let Some(k) = (0..support.len())
                .find(|&k| lex_sign(&values[k], &slopes[k]) != Ordering::Greater)
            {
                return Err(Error::CertificateFailed(format!(
                    "curve {} has nonpositive coefficient {}",
                    curves[support[k]].label, values[k]
                )));
            }
            return Ok(Fujita {
                support,
                values,
                slopes,
            });
        }
        support.extend(entering);
        support.sort_unstable();
    }
    Err(Error::NonTermination(curves.len() + 1))
}

fn labels_of<F: ExactField>(lattice: &SurfaceLattice<F>, idx: &[usize]) -> String {
    idx.iter()
        .map(|&i| lattice.prime_label(i))
        .collect::<Vec<_>>()
        .join(", ")
}

fn divisor_from_support<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    support: &[usize],
    coeffs: &[F],
) -> Divisor<F> {
    let mut raw = vec![F::zero(); lattice.primes().len()];
    for (&i, c) in support.iter().zip(coeffs) {
        raw[i] = c.clone();
    }
    Divisor::new(raw)
}

/// Zariski decomposition `theta = P + N` of a pseudoeffective class.
pub fn zariski_decompose<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    theta: &DivisorClass<F>,
) -> Result<ZariskiDecomposition<F>> {
    if !lattice.is_psef(theta)? {
        return Err(Error::NotPseudoeffective(lattice.format_class(theta)));
    }
    let negative = match lattice.cone() {
        ConeOracle::Quadric { .. } => Divisor::zero(lattice.primes().len()),
        ConeOracle::Curves { .. } => {
            let zero = DivisorClass::zero(lattice.rank());
            let f = fujita(lattice, theta, &zero)?;
            divisor_from_support(lattice, &f.support, &f.values)
        }
    };
    let positive = theta - &lattice.class_of(&negative);
    let certificate = certify(lattice, theta, &positive, &negative);
    if !certificate.holds() {
        return Err(Error::CertificateFailed(certificate.describe_failures()));
    }
    Ok(ZariskiDecomposition {
        input: theta.clone(),
        positive,
        negative,
        certificate,
    })
}

/// `max { lambda >= 0 : omega - lambda D is pseudoeffective }`.
pub fn threshold_psef<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    omega: &DivisorClass<F>,
    direction: &DivisorClass<F>,
) -> Result<F> {
    lattice.check_class(direction)?;
    if !lattice.is_ample(omega)? {
        return Err(Error::NotAmple(lattice.format_class(omega)));
    }
    if direction.is_zero() {
        return Err(Error::ZeroDirection);
    }
    if !lattice.is_psef(direction)? {
        return Err(Error::DirectionNotEffective(lattice.format_class(direction)));
    }
    match lattice.cone() {
        ConeOracle::Curves { generators, .. } => {
            // columns: lambda, mu_1..mu_m;  lambda D + sum mu_i g_i = omega
            let a: Matrix<F> = (0..lattice.rank())
                .map(|i| {
                    std::iter::once(direction.coeffs()[i].clone())
                        .chain(generators.iter().map(|g| g.coeffs()[i].clone()))
                        .collect()
                })
                .collect();
            let mut c = vec![F::zero(); generators.len() + 1];
            c[0] = F::one();
            match lp::maximize(&a, omega.coeffs(), &c) {
                LpOutcome::Optimal { value, .. } => Ok(value),
                LpOutcome::Unbounded => Err(Error::UnboundedRay),
                LpOutcome::Infeasible => Err(Error::NotPseudoeffective(lattice.format_class(omega))),
            }
        }
        ConeOracle::Quadric { polarization } => {
            let dd = lattice.dot(direction, direction);
            let od = lattice.dot(omega, direction);
            let oo = lattice.dot(omega, omega);
            let c1 = -(F::from_int(2) * od);
            let roots = solve_quadratic(&dd, &c1, &oo)?;
            // D psef and nonzero forces D.h > 0 by the Hodge index theorem
            let linear_exit = lattice.dot(omega, polarization) / lattice.dot(direction, polarization);
            let exit = roots
                .into_iter()
                .filter(|r| r.is_sign_positive())
                .chain(std::iter::once(linear_exit))
                .min()
                .expect("nonempty");
            if lattice.check_scalar(&exit).is_err() {
                return Err(ScalarError::NestedExtension {
                    value: exit.to_string(),
                }
                .into());
            }
            Ok(exit)
        }
    }
}

/// One affine piece of the negative-part family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment<F> {
    pub start: F,
    pub end: F,
    /// `N(start)`.
    pub value: Divisor<F>,
    /// `dN/dlambda` on the segment.
    pub slope: Divisor<F>,
    /// Support of `N` on the open segment.
    pub support: Vec<usize>,
}

impl<F: ExactField> Segment<F> {
    pub fn value_at(&self, lambda: &F) -> Divisor<F> {
        let dt = lambda.clone() - &self.start;
        self.value.add_scaled(&dt, &self.slope)
    }

    pub fn end_value(&self) -> Divisor<F> {
        self.value_at(&self.end)
    }
}

/// `lambda -> N(omega - lambda D)` on `[0, lambda_psef]`; identically zero
/// for `lambda <= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLFamily<F> {
    pub omega: DivisorClass<F>,
    pub direction: DivisorClass<F>,
    pub lambda_psef: F,
    pub segments: Vec<Segment<F>>,
}

impl<F: ExactField> PLFamily<F> {
    pub fn breakpoints(&self) -> Vec<F> {
        let mut out = vec![F::zero()];
        out.extend(self.segments.iter().map(|s| s.end.clone()));
        out
    }

    pub fn value_at(&self, lambda: &F) -> Result<Divisor<F>> {
        if !lambda.is_sign_positive() {
            let len = self
                .segments
                .first()
                .map_or(0, |s| s.value.coeffs().len());
            return Ok(Divisor::zero(len));
        }
        self.segments
            .iter()
            .find(|s| *lambda <= s.end)
            .map(|s| s.value_at(lambda))
            .ok_or_else(|| Error::OutOfRange(lambda.to_string()))
    }

    /// Values of `N` at every breakpoint, in order.
    pub fn breakpoint_values(&self) -> Vec<Divisor<F>> {
        let mut out: Vec<Divisor<F>> = self.segments.iter().map(|s| s.value.clone()).collect();
        if let Some(last) = self.segments.last() {
            out.push(last.end_value());
        }
        out
    }

    /// One row per breakpoint: `lambda` then the coefficient of every prime
    /// divisor of the lattice.
    pub fn to_csv(&self, lattice: &SurfaceLattice<F>) -> String {
        let mut out = String::from("lambda");
        for p in lattice.primes() {
            out.push(',');
            out.push_str(&p.label);
        }
        out.push('\n');
        for (lambda, value) in self.breakpoints().iter().zip(self.breakpoint_values()) {
            out.push_str(&lambda.to_string());
            for c in value.coeffs() {
                out.push(',');
                out.push_str(&c.to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Chamber walk for `lambda -> N(omega - lambda D)`.
pub fn pl_family<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    omega: &DivisorClass<F>,
    direction: &DivisorClass<F>,
) -> Result<PLFamily<F>> {
    let lambda_psef = threshold_psef(lattice, omega, direction)?;
    let nprimes = lattice.primes().len();
    let mut segments: Vec<Segment<F>> = Vec::new();

    match lattice.cone() {
        ConeOracle::Quadric { .. } => {
            if lambda_psef.is_sign_positive() {
                segments.push(Segment {
                    start: F::zero(),
                    end: lambda_psef.clone(),
                    value: Divisor::zero(nprimes),
                    slope: Divisor::zero(nprimes),
                    support: Vec::new(),
                });
            }
        }
        ConeOracle::Curves { .. } => {
            let curves = lattice.curves();
            let minus_d = -direction;
            let mut lambda = F::zero();
            let mut guard = 0;
            while lambda < lambda_psef {
                guard += 1;
                if guard > curves.len() + 1 {
                    return Err(Error::NonTermination(guard));
                }
                let theta0 = omega.add_scaled(&-lambda.clone(), direction);
                let f = fujita(lattice, &theta0, &minus_d)?;
                let value = divisor_from_support(lattice, &f.support, &f.values);
                let slope = divisor_from_support(lattice, &f.support, &f.slopes);

                // walls: a support coefficient reaching zero, or the positive
                // part reaching zero on a curve it is moving toward negative
                let mut step: Option<F> = None;
                let mut consider = |t: F| {
                    if step.as_ref().is_none_or(|s| t < *s) {
                        step = Some(t);
                    }
                };
                for (k, _) in f.support.iter().enumerate() {
                    if f.slopes[k].is_sign_negative() {
                        consider(-(f.values[k].clone() / &f.slopes[k]));
                    }
                }
                let p0 = &theta0 - &lattice.class_of(&value);
                let p1 = &minus_d - &lattice.class_of(&slope);
                for (i, c) in curves.iter().enumerate() {
                    if f.support.contains(&i) {
                        continue;
                    }
                    let d1 = lattice.dot(&p1, &c.class);
                    if d1.is_sign_negative() {
                        consider(-(lattice.dot(&p0, &c.class) / d1));
                    }
                }
                let end = match step {
                    Some(t) if lambda.clone() + &t < lambda_psef => lambda.clone() + t,
                    _ => lambda_psef.clone(),
                };
                let seg = Segment {
                    start: lambda.clone(),
                    end: end.clone(),
                    value,
                    slope,
                    support: f.support,
                };
                match segments.last_mut() {
                    Some(prev) if prev.slope == seg.slope => prev.end = seg.end,
                    _ => segments.push(seg),
                }
                lambda = end;
            }
        }
    }

    let family = PLFamily {
        omega: omega.clone(),
        direction: direction.clone(),
        lambda_psef,
        segments,
    };
    for (lambda, value) in family.breakpoints().iter().zip(family.breakpoint_values()) {
        let theta = omega.add_scaled(&-lambda.clone(), direction);
        let direct = zariski_decompose(lattice, &theta)?;
        if direct.negative != value {
            return Err(Error::CrossCheckFailed(lambda.to_string()));
        }
    }
    Ok(family)
}

/// `v(theta) = t * ord_E(N(theta))` for `v = t ord_E`.
pub fn minimal_vanishing_order<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    v: &RealDivisorialValuation<F>,
    theta: &DivisorClass<F>,
) -> Result<F> {
    let prime = lattice.prime_index(&v.divisor)?;
    let dec = zariski_decompose(lattice, theta)?;
    Ok(v.scale.clone() * dec.negative.coeff(prime))
}

/// Divisorial part of the diminished base locus: the support of `N(theta)`.
pub fn negative_support<F: ExactField>(
    lattice: &SurfaceLattice<F>,
    theta: &DivisorClass<F>,
) -> Result<Vec<String>> {
    Ok(zariski_decompose(lattice, theta)?.support_labels(lattice))
}
