//! Néron–Severi lattices of surfaces with cone-membership oracles.
//!
//! Correctness of every cone query is relative to the declared data: in
//! curve-list mode the pseudoeffective cone is the cone spanned by the
//! declared generators and the nef cone is its dual under the intersection
//! form; in quadric mode both cones equal `{x : x^2 >= 0, x.h >= 0}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg::{self, Inertia, Matrix};
use crate::lp::{self, LpOutcome};
use crate::scalar::ExactField;

/// A numerical class, as coordinates over the lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass<F> {
    coeffs: Vec<F>,
}

impl<F: ExactField> DivisorClass<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        DivisorClass { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        DivisorClass::new(coeffs.iter().map(|&c| F::from_int(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass::new(vec![F::zero(); rank])
    }

    pub fn unit(rank: usize, index: usize) -> Self {
        let mut c = vec![F::zero(); rank];
        c[index] = F::one();
        DivisorClass::new(c)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        DivisorClass::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: &F, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "class rank");
        DivisorClass::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.clone() + t.clone() * y)
                .collect(),
        )
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(F::is_rational)
    }
}

impl<F: ExactField> Add for &DivisorClass<F> {
    type Output = DivisorClass<F>;
    fn add(self, rhs: &DivisorClass<F>) -> DivisorClass<F> {
        self.add_scaled(&F::one(), rhs)
    }
}

impl<F: ExactField> Sub for &DivisorClass<F> {
    type Output = DivisorClass<F>;
    fn sub(self, rhs: &DivisorClass<F>) -> DivisorClass<F> {
        self.add_scaled(&-F::one(), rhs)
    }
}

impl<F: ExactField> Neg for &DivisorClass<F> {
    type Output = DivisorClass<F>;
    fn neg(self) -> DivisorClass<F> {
        self.scale(&-F::one())
    }
}

/// A named class, used both for declared curves and for prime divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve<F> {
    pub label: String,
    pub class: DivisorClass<F>,
}

impl<F: ExactField> Curve<F> {
    pub fn new(label: impl Into<String>, class: DivisorClass<F>) -> Self {
        Curve {
            label: label.into(),
            class,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeOracle<F> {
    /// Finitely generated pseudoeffective cone plus the declared irreducible
    /// curves (every curve of negative self-intersection must be listed).
    Curves {
        generators: Vec<DivisorClass<F>>,
        curves: Vec<Curve<F>>,
    },
    /// `Nef = Psef = {x : x^2 >= 0, x.h >= 0}` for a polarization `h`.
    Quadric { polarization: DivisorClass<F> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeMode {
    Curves,
    Quadric,
}

/// A formal combination of the lattice's prime divisors (see
/// [`SurfaceLattice::primes`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Divisor<F> {
    coeffs: Vec<F>,
}

impl<F: ExactField> Divisor<F> {
    pub fn new(coeffs: Vec<F>) -> Self {
        Divisor { coeffs }
    }

    pub fn zero(len: usize) -> Self {
        Divisor::new(vec![F::zero(); len])
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, prime: usize) -> &F {
        &self.coeffs[prime]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(F::is_zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Divisor::new(self.coeffs.iter().map(|x| x.clone() * c).collect())
    }

    /// `self + t * other`.
    pub fn add_scaled(&self, t: &F, other: &Self) -> Self {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "divisor length");
        Divisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x.clone() + t.clone() * y)
                .collect(),
        )
    }

    /// Indices of primes with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&i| !self.coeffs[i].is_zero())
            .collect()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_sign_negative())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NotSymmetric,
    Signature(Inertia),
    AmpleNotAmple,
    PolarizationNotPositive,
    EmptyGenerators,
    GeneratorsDoNotSpan { rank: usize },
    ConeNotPointed,
    CurveNotPsef(String),
    NoDeclaredCurves,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotSymmetric => write!(f, "gram matrix is not symmetric"),
            Violation::Signature(s) => write!(
                f,
                "signature ({}, {}) with {} null directions violates the Hodge index theorem",
                s.positive, s.negative, s.zero
            ),
            Violation::AmpleNotAmple => write!(f, "declared ample class is not ample"),
            Violation::PolarizationNotPositive => write!(f, "polarization h has h^2 <= 0"),
            Violation::EmptyGenerators => write!(f, "no pseudoeffective generators declared"),
            Violation::GeneratorsDoNotSpan { rank } => {
                write!(f, "generators span only a rank {rank} subspace")
            }
            Violation::ConeNotPointed => write!(f, "pseudoeffective cone contains a line"),
            Violation::CurveNotPsef(l) => {
                write!(f, "curve {l} is not in the cone of the generators")
            }
            Violation::NoDeclaredCurves => write!(f, "curve mode requires declared curves"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub signature: Inertia,
    pub violations: Vec<Violation>,
    /// Every subset of declared curves up to the configured size, with
    /// whether its Gram submatrix is negative definite.
    pub negative_definite_subsets: Vec<(Vec<String>, bool)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationOptions {
    pub max_subset: usize,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions { max_subset: 4 }
    }
}

#[derive(Debug, Clone)]
pub struct SurfaceLattice<F> {
    basis_labels: Vec<String>,
    gram: Matrix<F>,
    cone: ConeOracle<F>,
    ample: DivisorClass<F>,
    primes: Vec<Curve<F>>,
    field_witness: Option<F>,
}

impl<F: ExactField> SurfaceLattice<F> {
    /// Structural checks only (shapes, labels, a single scalar field); the
    /// geometric invariants are reported by [`SurfaceLattice::validate`].
    pub fn new(
        basis_labels: Vec<String>,
        gram: Matrix<F>,
        cone: ConeOracle<F>,
        ample: DivisorClass<F>,
    ) -> Result<Self> {
        let n = basis_labels.len();
        if n == 0 {
            return Err(Error::InvalidLattice("empty basis".into()));
        }
        check_distinct(basis_labels.iter())?;
        if gram.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: gram.len(),
            });
        }
        for row in &gram {
            check_rank(n, row.len())?;
        }
        check_rank(n, ample.rank())?;

        let mut scalars: Vec<&F> = gram.iter().flatten().collect();
        scalars.extend(ample.coeffs());
        match &cone {
            ConeOracle::Curves { generators, curves } => {
                check_distinct(curves.iter().map(|c| &c.label))?;
                for g in generators {
                    check_rank(n, g.rank())?;
                    scalars.extend(g.coeffs());
                }
                for c in curves {
                    check_rank(n, c.class.rank())?;
                    scalars.extend(c.class.coeffs());
                }
            }
            ConeOracle::Quadric { polarization } => {
                check_rank(n, polarization.rank())?;
                scalars.extend(polarization.coeffs());
            }
        }
        let field_witness = field_witness(scalars)?;

        let mut primes: Vec<Curve<F>> = match &cone {
            ConeOracle::Curves { curves, .. } => curves.clone(),
            ConeOracle::Quadric { .. } => Vec::new(),
        };
        for (i, label) in basis_labels.iter().enumerate() {
            if !primes.iter().any(|p| &p.label == label) {
                primes.push(Curve::new(label.clone(), DivisorClass::unit(n, i)));
            }
        }

        Ok(SurfaceLattice {
            basis_labels,
            gram,
            cone,
            ample,
            primes,
            field_witness,
        })
    }

    pub fn rank(&self) -> usize {
        self.basis_labels.len()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn cone(&self) -> &ConeOracle<F> {
        &self.cone
    }

    pub fn mode(&self) -> ConeMode {
        match self.cone {
            ConeOracle::Curves { .. } => ConeMode::Curves,
            ConeOracle::Quadric { .. } => ConeMode::Quadric,
        }
    }

    pub fn ample(&self) -> &DivisorClass<F> {
        &self.ample
    }

    /// Declared curves (empty in quadric mode).
    pub fn curves(&self) -> &[Curve<F>] {
        match &self.cone {
            ConeOracle::Curves { curves, .. } => curves,
            ConeOracle::Quadric { .. } => &[],
        }
    }

    /// Prime divisors addressable by label: the declared curves first, then
    /// every basis label not already used by a curve (as the unit class).
    /// Curve `i` is prime `i`.
    pub fn primes(&self) -> &[Curve<F>] {
        &self.primes
    }

    pub fn prime_index(&self, label: &str) -> Result<usize> {
        self.primes
            .iter()
            .position(|p| p.label == label)
            .ok_or_else(|| Error::UnknownDivisor(label.to_string()))
    }

    pub fn prime_label(&self, index: usize) -> &str {
        &self.primes[index].label
    }

    /// Numerical class of a formal combination of primes.
    pub fn class_of(&self, divisor: &Divisor<F>) -> DivisorClass<F> {
        self.primes
            .iter()
            .zip(divisor.coeffs())
            .fold(DivisorClass::zero(self.rank()), |acc, (p, c)| {
                acc.add_scaled(c, &p.class)
            })
    }

    /// The extension field of the lattice data, if any entry is irrational.
    pub fn field_witness(&self) -> Option<&F> {
        self.field_witness.as_ref()
    }

    /// Checks shape and scalar-field compatibility of a user class.
    pub fn check_class(&self, x: &DivisorClass<F>) -> Result<()> {
        check_rank(self.rank(), x.rank())?;
        if let Some(w) = &self.field_witness {
            for c in x.coeffs() {
                w.try_add(c)?;
            }
        } else if let Some(c) = x.coeffs().iter().find(|c| !c.is_rational()) {
            // fine on its own, but all irrational entries must agree
            for other in x.coeffs() {
                c.try_add(other)?;
            }
        }
        Ok(())
    }

    /// Checks that a scalar produced by an engine stays inside the lattice's
    /// field.
    pub fn check_scalar(&self, s: &F) -> Result<()> {
        if let Some(w) = &self.field_witness {
            w.try_add(s)?;
        }
        Ok(())
    }

    pub fn intersect(&self, x: &DivisorClass<F>, y: &DivisorClass<F>) -> Result<F> {
        check_rank(self.rank(), x.rank())?;
        check_rank(self.rank(), y.rank())?;
        Ok(self.dot(x, y))
    }

    pub(crate) fn dot(&self, x: &DivisorClass<F>, y: &DivisorClass<F>) -> F {
        let gy = linalg::mat_vec(&self.gram, y.coeffs());
        linalg::dot(x.coeffs(), &gy)
    }

    /// Gram matrix of the given classes.
    pub fn gram_of(&self, classes: &[&DivisorClass<F>]) -> Matrix<F> {
        classes
            .iter()
            .map(|x| classes.iter().map(|y| self.dot(x, y)).collect())
            .collect()
    }

    pub fn validate(&self) -> ValidationReport {
        self.validate_with(ValidationOptions::default())
    }

    pub fn validate_with(&self, opts: ValidationOptions) -> ValidationReport {
        let mut violations = Vec::new();
        let n = self.rank();
        if !linalg::is_symmetric(&self.gram) {
            violations.push(Violation::NotSymmetric);
        }
        let signature = linalg::inertia(&self.gram);
        if signature.positive != 1 || signature.negative != n - 1 {
            violations.push(Violation::Signature(signature));
        }
        match &self.cone {
            ConeOracle::Quadric { polarization } => {
                if !self.dot(polarization, polarization).is_sign_positive() {
                    violations.push(Violation::PolarizationNotPositive);
                }
            }
            ConeOracle::Curves { generators, curves } => {
                if generators.is_empty() {
                    violations.push(Violation::EmptyGenerators);
                } else {
                    let rows: Vec<Vec<F>> =
                        generators.iter().map(|g| g.coeffs().to_vec()).collect();
                    let r = linalg::rank(&rows);
                    if r < n {
                        violations.push(Violation::GeneratorsDoNotSpan { rank: r });
                    }
                    if !self.cone_is_pointed(generators) {
                        violations.push(Violation::ConeNotPointed);
                    }
                }
                if curves.is_empty() {
                    violations.push(Violation::NoDeclaredCurves);
                }
                for c in curves {
                    if !generators.is_empty() && !self.in_generated_cone(generators, &c.class) {
                        violations.push(Violation::CurveNotPsef(c.label.clone()));
                    }
                }
            }
        }
        if violations.is_empty() && !self.is_ample_unchecked(&self.ample) {
            violations.push(Violation::AmpleNotAmple);
        }

        let curves = self.curves();
        let mut negative_definite_subsets = Vec::new();
        for subset in subsets(curves.len(), opts.max_subset) {
            let classes: Vec<&DivisorClass<F>> =
                subset.iter().map(|&i| &curves[i].class).collect();
            let negdef = linalg::is_negative_definite(&self.gram_of(&classes));
            let labels = subset.iter().map(|&i| curves[i].label.clone()).collect();
            negative_definite_subsets.push((labels, negdef));
        }

        ValidationReport {
            signature,
            violations,
            negative_definite_subsets,
        }
    }

    pub fn is_psef(&self, x: &DivisorClass<F>) -> Result<bool> {
        self.check_class(x)?;
        Ok(match &self.cone {
            ConeOracle::Curves { generators, .. } => self.in_generated_cone(generators, x),
            ConeOracle::Quadric { polarization } => self.in_quadric_cone(polarization, x, false),
        })
    }

    pub fn is_nef(&self, x: &DivisorClass<F>) -> Result<bool> {
        self.check_class(x)?;
        Ok(match &self.cone {
            ConeOracle::Curves { generators, .. } => generators
                .iter()
                .all(|g| !self.dot(x, g).is_sign_negative()),
            ConeOracle::Quadric { polarization } => self.in_quadric_cone(polarization, x, false),
        })
    }

    pub fn is_ample(&self, x: &DivisorClass<F>) -> Result<bool> {
        self.check_class(x)?;
        Ok(self.is_ample_unchecked(x))
    }

    /// Interior of the pseudoeffective cone. In curve mode: the generators
    /// span the space and `x` has a representation with every generator
    /// weight strictly positive.
    pub fn is_big(&self, x: &DivisorClass<F>) -> Result<bool> {
        self.check_class(x)?;
        Ok(match &self.cone {
            ConeOracle::Quadric { polarization } => self.in_quadric_cone(polarization, x, true),
            ConeOracle::Curves { generators, .. } => {
                let rows: Vec<Vec<F>> = generators.iter().map(|g| g.coeffs().to_vec()).collect();
                if generators.is_empty() || linalg::rank(&rows) < self.rank() {
                    return Ok(false);
                }
                self.strictly_inside(generators, x)
            }
        })
    }

    fn is_ample_unchecked(&self, x: &DivisorClass<F>) -> bool {
        match &self.cone {
            ConeOracle::Curves { generators, .. } => {
                !generators.is_empty()
                    && generators.iter().all(|g| self.dot(x, g).is_sign_positive())
            }
            ConeOracle::Quadric { polarization } => self.in_quadric_cone(polarization, x, true),
        }
    }

    fn in_quadric_cone(&self, h: &DivisorClass<F>, x: &DivisorClass<F>, strict: bool) -> bool {
        let sq = self.dot(x, x);
        let xh = self.dot(x, h);
        if strict {
            sq.is_sign_positive() && xh.is_sign_positive()
        } else {
            !sq.is_sign_negative() && !xh.is_sign_negative()
        }
    }

    fn generator_matrix(&self, generators: &[DivisorClass<F>]) -> Matrix<F> {
        (0..self.rank())
            .map(|i| generators.iter().map(|g| g.coeffs()[i].clone()).collect())
            .collect()
    }

    pub(crate) fn in_generated_cone(&self, generators: &[DivisorClass<F>], x: &DivisorClass<F>) -> bool {
        let a = self.generator_matrix(generators);
        lp::feasible_point(&a, x.coeffs(), generators.len()).is_some()
    }

    /// max s subject to x = sum (nu_i + s) g_i, nu >= 0, 0 <= s <= 1.
    fn strictly_inside(&self, generators: &[DivisorClass<F>], x: &DivisorClass<F>) -> bool {
        let m = generators.len();
        let n = self.rank();
        let total = generators
            .iter()
            .fold(DivisorClass::zero(n), |acc, g| &acc + g);
        // columns: nu_1..nu_m, s, w (slack for s <= 1)
        let mut a: Matrix<F> = (0..n)
            .map(|i| {
                let mut row: Vec<F> = generators.iter().map(|g| g.coeffs()[i].clone()).collect();
                row.push(total.coeffs()[i].clone());
                row.push(F::zero());
                row
            })
            .collect();
        let mut bound = vec![F::zero(); m + 2];
        bound[m] = F::one();
        bound[m + 1] = F::one();
        a.push(bound);
        let mut b = x.coeffs().to_vec();
        b.push(F::one());
        let mut c = vec![F::zero(); m + 2];
        c[m] = F::one();
        match lp::maximize(&a, &b, &c) {
            LpOutcome::Optimal { value, .. } => value.is_sign_positive(),
            _ => false,
        }
    }

    /// No nontrivial nonnegative combination of generators vanishes.
    fn cone_is_pointed(&self, generators: &[DivisorClass<F>]) -> bool {
        let mut a = self.generator_matrix(generators);
        a.push(vec![F::one(); generators.len()]);
        let mut b = vec![F::zero(); self.rank()];
        b.push(F::one());
        lp::feasible_point(&a, &b, generators.len()).is_none()
    }

    /// Human-readable `c1*L1 + c2*L2` over the basis labels.
    pub fn format_class(&self, x: &DivisorClass<F>) -> String {
        format_combination(self.basis_labels.iter().map(String::as_str).zip(x.coeffs()))
    }

    /// Human-readable combination over prime labels.
    pub fn format_divisor(&self, d: &Divisor<F>) -> String {
        format_combination(self.primes.iter().map(|p| p.label.as_str()).zip(d.coeffs()))
    }
}

/// `2*H - 1*E`, `0` for the empty combination. Irrational coefficients are
/// parenthesized.
pub fn format_combination<'a, F: ExactField + 'a>(
    terms: impl IntoIterator<Item = (&'a str, &'a F)>,
) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_rational() && c.is_sign_negative() {
            (true, -c.clone())
        } else {
            (false, c.clone())
        };
        let mag = if mag.is_rational() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format!("{mag}*{label}"));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn check_rank(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

fn check_distinct<'a>(labels: impl Iterator<Item = &'a String>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for l in labels {
        if !seen.insert(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

fn field_witness<'a, F: ExactField>(scalars: impl IntoIterator<Item = &'a F>) -> Result<Option<F>> {
    let mut witness: Option<F> = None;
    for s in scalars {
        if s.is_rational() {
            continue;
        }
        match &witness {
            None => witness = Some(s.clone()),
            Some(w) => {
                w.try_add(s)?;
            }
        }
    }
    Ok(witness)
}

/// Index subsets of `0..n` of size `1..=max`, in lexicographic order.
pub fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..n {
            cur.push(i);
            out.push(cur.clone());
            if cur.len() < max {
                rec(i + 1, n, max, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, n, max, &mut Vec::new(), &mut out);
    out
}
