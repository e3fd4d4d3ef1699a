//! Exact ordered-field scalars.
//!
//! Every engine in this crate is generic over [`ExactField`]. Two fields are
//! provided: plain rationals ([`Rational`]) and elements of a single real
//! quadratic extension of the rationals ([`Quadratic`]). Floating point types
//! deliberately do not implement the trait: every certificate in the crate is
//! an exact equality or sign test.

mod quadratic;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_rational::BigRational as Rational;
pub use quadratic::{square_free_part, Quadratic};
pub use text::{format_rational, parse_rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("operands live in different quadratic fields (sqrt({left}) vs sqrt({right}))")]
    MixedFields { left: BigUint, right: BigUint },
    #[error("division by zero")]
    DivisionByZero,
    #[error("all coefficients of the equation are zero")]
    DegenerateEquation,
    #[error("square root of {value} is not in the field (would need a nested extension)")]
    NestedExtension { value: String },
    #[error("square root of negative value {0}")]
    NegativeSqrt(String),
    #[error("cannot parse scalar {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A totally ordered field with exact arithmetic.
///
/// The operator impls may panic when the operands live in incompatible
/// fields (two different quadratic extensions); the `try_*` methods report
/// that case as [`ScalarError::MixedFields`] instead.
pub trait ExactField:
    Clone
    + fmt::Debug
    + fmt::Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
    + 'static
{
    fn from_rational(q: Rational) -> Self;

    /// `Some(q)` iff the element is rational.
    fn to_rational(&self) -> Option<Rational>;

    fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Whether the two elements can be combined without leaving a single
    /// quadratic extension.
    fn compatible(&self, _other: &Self) -> bool {
        true
    }

    fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() + other)
    }

    fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() - other)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        Ok(self.clone() * other)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::one() / self)
    }

    fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.cmp(other))
    }

    /// Nonnegative square root, if it exists in a field compatible with
    /// `self`.
    fn checked_sqrt(&self) -> Result<Self, ScalarError>;

    fn parse_scalar(s: &str) -> Result<Self, ScalarError>;

    fn is_sign_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn is_sign_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn abs_value(&self) -> Self {
        if self.is_sign_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl ExactField for Rational {
    fn from_rational(q: Rational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn checked_sqrt(&self) -> Result<Self, ScalarError> {
        if self.is_negative() {
            return Err(ScalarError::NegativeSqrt(self.to_string()));
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Ok(Rational::new(rn, rd))
        } else {
            Err(ScalarError::NestedExtension {
                value: format_rational(self),
            })
        }
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        parse_rational(s)
    }
}

/// Real roots of `c2*x^2 + c1*x + c0 = 0` in ascending order, a double root
/// listed once.
///
/// An inconsistent equation (`c2 = c1 = 0`, `c0 != 0`) has no roots and
/// yields an empty list; the all-zero equation is rejected.
pub fn solve_quadratic<F: ExactField>(c2: &F, c1: &F, c0: &F) -> Result<Vec<F>, ScalarError> {
    if c2.is_zero() {
        if c1.is_zero() {
            return if c0.is_zero() {
                Err(ScalarError::DegenerateEquation)
            } else {
                Ok(Vec::new())
            };
        }
        return Ok(vec![-c0.try_mul(&c1.try_inv()?)?]);
    }
    let four = F::from_int(4);
    let disc = c1.try_mul(c1)?.try_sub(&four.try_mul(c2)?.try_mul(c0)?)?;
    if disc.is_sign_negative() {
        return Ok(Vec::new());
    }
    let two_a_inv = (F::from_int(2).try_mul(c2)?).try_inv()?;
    if disc.is_zero() {
        return Ok(vec![-c1.try_mul(&two_a_inv)?]);
    }
    let root = disc.checked_sqrt()?;
    let minus_b = -c1.clone();
    let mut roots = vec![
        minus_b.try_sub(&root)?.try_mul(&two_a_inv)?,
        minus_b.try_add(&root)?.try_mul(&two_a_inv)?,
    ];
    roots.sort();
    Ok(roots)
}

/// Specialization of [`solve_quadratic`] to rational coefficients, landing in
/// the quadratic field generated by the discriminant.
pub fn solve_rational_quadratic(
    c2: &Rational,
    c1: &Rational,
    c0: &Rational,
) -> Result<Vec<Quadratic>, ScalarError> {
    solve_quadratic(
        &Quadratic::from(c2.clone()),
        &Quadratic::from(c1.clone()),
        &Quadratic::from(c0.clone()),
    )
}

pub(crate) fn big_is_square(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}
