use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::text::{format_quadratic, parse_quadratic};
use super::{big_is_square, ExactField, Rational, ScalarError};

/// An element `a + b*sqrt(d)` of a real quadratic field.
///
/// Canonical form: `d` is square-free and at least 2 whenever `b != 0`, and
/// `b == 0` implies `d == 0`. Rationals therefore carry no field tag and
/// combine with elements of any extension; equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: Rational,
    b: Rational,
    d: BigUint,
}

/// Splits `n = s^2 * f` with `f` square-free, returning `(s, f)`.
///
/// Trial division only runs while `p^3 <= n`: once every prime below `p`
/// is removed, a cofactor with `p^3 > n` has at most two prime factors and
/// is square-free unless it is a perfect square.
pub fn square_free_part(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut rest = n.clone();
    let mut root = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p * &p <= rest {
        let p2 = &p * &p;
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            root *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            free *= &p;
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    if let Some(r) = big_is_square(&rest) {
        root *= r;
    } else {
        free *= rest;
    }
    (root, free)
}

impl Quadratic {
    /// Builds `a + b*sqrt(d)`, reducing `d` to its square-free part.
    pub fn new(a: Rational, b: Rational, d: impl Into<BigUint>) -> Self {
        let d: BigUint = d.into();
        let (root, free) = square_free_part(&d);
        let b = b * Rational::from_integer(BigInt::from(root));
        if free.is_one() || free.is_zero() {
            return Quadratic::rational(a + b * Rational::from_integer(free.into()));
        }
        Quadratic { a, b, d: free }.canonical()
    }

    pub fn rational(q: Rational) -> Self {
        Quadratic {
            a: q,
            b: Rational::zero(),
            d: BigUint::zero(),
        }
    }

    /// `sqrt(n)` for a nonnegative integer `n`.
    pub fn sqrt_of(n: impl Into<BigUint>) -> Self {
        Quadratic::new(Rational::zero(), Rational::one(), n)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The square-free radicand, `0` for rationals.
    pub fn radicand(&self) -> &BigUint {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        Quadratic {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// `a^2 - b^2 d`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * self.d_rational()
    }

    /// Approximate value, for diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }

    pub fn signum(&self) -> Ordering {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) | (Ordering::Equal, s) => s,
            (s, t) if s == t => s,
            (s, _) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * self.d_rational();
                // a^2 == b^2 d is impossible for square-free d >= 2
                if a2 > b2d {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    fn d_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.d.clone()))
    }

    fn canonical(mut self) -> Self {
        if self.b.is_zero() {
            self.d = BigUint::zero();
        }
        self
    }

    fn common_field(&self, other: &Self) -> Result<BigUint, ScalarError> {
        if self.d.is_zero() {
            Ok(other.d.clone())
        } else if other.d.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(ScalarError::MixedFields {
                left: self.d.clone(),
                right: other.d.clone(),
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        Ok(Quadratic {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d,
        }
        .canonical())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        let d = self.common_field(other)?;
        let dq = Rational::from_integer(BigInt::from(d.clone()));
        Ok(Quadratic {
            a: &self.a * &other.a + &self.b * &other.b * dq,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
        .canonical())
    }

    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Quadratic {
            a: &self.a / &n,
            b: -(&self.b / &n),
            d: self.d.clone(),
        }
        .canonical())
    }

    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(self.checked_add(&-other.clone())?.signum())
    }

    fn expect_ok<T>(r: Result<T, ScalarError>) -> T {
        match r {
            Ok(v) => v,
            Err(e) => panic!("{e}"),
        }
    }
}

fn rational_sign(q: &Rational) -> Ordering {
    match q.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = big_is_square(&q.numer().magnitude().clone())?;
    let d = big_is_square(&q.denom().magnitude().clone())?;
    Some(Rational::new(n.into(), d.into()))
}

impl From<Rational> for Quadratic {
    fn from(q: Rational) -> Self {
        Quadratic::rational(q)
    }
}

impl From<i64> for Quadratic {
    fn from(n: i64) -> Self {
        Quadratic::rational(Rational::from_integer(n.into()))
    }
}

impl PartialOrd for Quadratic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics when the operands live in different extensions.
impl Ord for Quadratic {
    fn cmp(&self, other: &Self) -> Ordering {
        Quadratic::expect_ok(self.checked_cmp(other))
    }
}

impl Neg for Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        Quadratic {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &Quadratic {
    type Output = Quadratic;
    fn neg(self) -> Quadratic {
        -self.clone()
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Quadratic> for &Quadratic {
            type Output = Quadratic;
            fn $method(self, rhs: &Quadratic) -> Quadratic {
                let f: fn(&Quadratic, &Quadratic) -> Quadratic = $body;
                f(self, rhs)
            }
        }
        impl $trait<Quadratic> for Quadratic {
            type Output = Quadratic;
            fn $method(self, rhs: Quadratic) -> Quadratic {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Quadratic> for Quadratic {
            type Output = Quadratic;
            fn $method(self, rhs: &Quadratic) -> Quadratic {
                (&self).$method(rhs)
            }
        }
        impl $trait<Quadratic> for &Quadratic {
            type Output = Quadratic;
            fn $method(self, rhs: Quadratic) -> Quadratic {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| Quadratic::expect_ok(x.checked_add(y)));
forward_binop!(Sub, sub, |x, y| Quadratic::expect_ok(x.checked_add(&-y)));
forward_binop!(Mul, mul, |x, y| Quadratic::expect_ok(x.checked_mul(y)));
forward_binop!(Div, div, |x, y| {
    let inv = Quadratic::expect_ok(y.checked_inv());
    Quadratic::expect_ok(x.checked_mul(&inv))
});

impl AddAssign<&Quadratic> for Quadratic {
    fn add_assign(&mut self, rhs: &Quadratic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Quadratic> for Quadratic {
    fn sub_assign(&mut self, rhs: &Quadratic) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Quadratic> for Quadratic {
    fn mul_assign(&mut self, rhs: &Quadratic) {
        *self = &*self * rhs;
    }
}

impl Zero for Quadratic {
    fn zero() -> Self {
        Quadratic::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Quadratic {
    fn one() -> Self {
        Quadratic::rational(Rational::one())
    }
}

impl Sum for Quadratic {
    fn sum<I: Iterator<Item = Quadratic>>(iter: I) -> Self {
        iter.fold(Quadratic::zero(), |acc, x| acc + x)
    }
}

impl Product for Quadratic {
    fn product<I: Iterator<Item = Quadratic>>(iter: I) -> Self {
        iter.fold(Quadratic::one(), |acc, x| acc * x)
    }
}

impl fmt::Display for Quadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_quadratic(&self.a, &self.b, &self.d))
    }
}

impl FromStr for Quadratic {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self, ScalarError> {
        let (a, b, d) = parse_quadratic(s)?;
        Ok(Quadratic::new(a, b, d))
    }
}

impl ExactField for Quadratic {
    fn from_rational(q: Rational) -> Self {
        Quadratic::rational(q)
    }

    fn to_rational(&self) -> Option<Rational> {
        self.b.is_zero().then(|| self.a.clone())
    }

    fn compatible(&self, other: &Self) -> bool {
        self.common_field(other).is_ok()
    }

    fn try_add(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(other)
    }

    fn try_sub(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_add(&-other)
    }

    fn try_mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.checked_mul(other)
    }

    fn try_inv(&self) -> Result<Self, ScalarError> {
        self.checked_inv()
    }

    fn try_cmp(&self, other: &Self) -> Result<Ordering, ScalarError> {
        self.checked_cmp(other)
    }

    /// A rational radicand may open a new extension; an irrational one must
    /// be a perfect square inside its own field.
    fn checked_sqrt(&self) -> Result<Self, ScalarError> {
        if self.signum() == Ordering::Less {
            return Err(ScalarError::NegativeSqrt(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Quadratic::zero());
        }
        if self.b.is_zero() {
            // p/q = (p*q) / q^2
            let q = self.a.denom().clone();
            let pq = (self.a.numer() * &q).magnitude().clone();
            let scale = Rational::new(BigInt::one(), q);
            return Ok(Quadratic::new(Rational::zero(), scale, pq));
        }
        // (u + w sqrt d)^2 = a + b sqrt d  <=>  u^2 + d w^2 = a, 2 u w = b
        let nested = || ScalarError::NestedExtension {
            value: self.to_string(),
        };
        let m = rational_sqrt(&self.norm()).ok_or_else(nested)?;
        let two = Rational::from_integer(2.into());
        for cand in [&self.a + &m, &self.a - &m] {
            let u2 = cand / &two;
            if u2.is_zero() {
                continue;
            }
            if let Some(u) = rational_sqrt(&u2) {
                let w = &self.b / (&two * &u);
                let root = Quadratic {
                    a: u,
                    b: w,
                    d: self.d.clone(),
                }
                .canonical();
                return Ok(if root.signum() == Ordering::Less {
                    -root
                } else {
                    root
                });
            }
        }
        Err(nested())
    }

    fn parse_scalar(s: &str) -> Result<Self, ScalarError> {
        s.parse()
    }
}
