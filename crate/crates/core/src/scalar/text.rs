//! Text form of scalars: `p/q` for rationals and `p/q + r/s*sqrt(D)` for
//! quadratic elements. Parsing ignores whitespace.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{Rational, ScalarError};

fn parse_error(input: &str, reason: impl Into<String>) -> ScalarError {
    ScalarError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(super) fn format_quadratic(a: &Rational, b: &Rational, d: &BigUint) -> String {
    if b.is_zero() {
        return format_rational(a);
    }
    let surd = format!("{}*sqrt({})", format_rational(&b.abs()), d);
    match (a.is_zero(), b.is_negative()) {
        (true, false) => surd,
        (true, true) => format!("-{surd}"),
        (false, false) => format!("{} + {surd}", format_rational(a)),
        (false, true) => format!("{} - {surd}", format_rational(a)),
    }
}

pub fn parse_rational(input: &str) -> Result<Rational, ScalarError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    parse_compact_rational(&s).map_err(|reason| parse_error(input, reason))
}

fn parse_compact_rational(s: &str) -> Result<Rational, String> {
    if s.is_empty() {
        return Err("empty number".into());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num = BigInt::from_str(num).map_err(|e| format!("bad numerator: {e}"))?;
    let den = match den {
        Some(d) => BigInt::from_str(d).map_err(|e| format!("bad denominator: {e}"))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rational::new(num, den))
}

/// Parses to the raw triple `(a, b, d)`; the caller canonicalizes.
pub(super) fn parse_quadratic(input: &str) -> Result<(Rational, Rational, BigUint), ScalarError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(pos) = s.find("sqrt(") else {
        return parse_rational(input).map(|q| (q, Rational::zero(), BigUint::zero()));
    };
    let tail = &s[pos + 5..];
    let radicand = tail
        .strip_suffix(')')
        .ok_or_else(|| parse_error(input, "expected `)` at the end"))?;
    let d = BigUint::from_str(radicand).map_err(|e| parse_error(input, format!("bad radicand: {e}")))?;

    let prefix = &s[..pos];
    let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
    if prefix.ends_with('*') {
        return Err(parse_error(input, "dangling `*`"));
    }
    let split = prefix
        .char_indices()
        .skip(1)
        .filter(|&(_, c)| c == '+' || c == '-')
        .map(|(i, _)| i)
        .last();
    let (a, coeff) = match split {
        Some(i) => (
            parse_compact_rational(&prefix[..i]).map_err(|r| parse_error(input, r))?,
            &prefix[i..],
        ),
        None => (Rational::zero(), prefix),
    };
    let b = match coeff {
        "" | "+" => Rational::one(),
        "-" => -Rational::one(),
        c => {
            let c = c.strip_prefix('+').unwrap_or(c);
            parse_compact_rational(c).map_err(|r| parse_error(input, r))?
        }
    };
    Ok((a, b, d))
}
