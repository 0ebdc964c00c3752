use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for `numer/denom`. Panics if `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.125"` into an
/// exact rational. Decimals are converted exactly (`"0.5"` is `1/2`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let err = || Error::Parse(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = parse_int(n.trim()).ok_or_else(err)?;
        let d: BigInt = parse_int(d.trim()).ok_or_else(err)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = t.split_once('.') {
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        if (digits.is_empty() && frac_part.is_empty())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
            || !digits.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(err());
        }
        let whole = format!("{digits}{frac_part}");
        let mut numer: BigInt = whole.parse().map_err(|_| err())?;
        if negative {
            numer = -numer;
        }
        let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(Rational::new(numer, denom));
    }
    parse_int(t).map(Rational::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let body = s.strip_prefix(['-', '+']).unwrap_or(s);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical `"p/q"` form, or `"p"` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational(" 7/2 ").unwrap(), rat(7, 2));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/", "/2", "1.2.3", "1e5", "0x10", "--1", "."] {
            assert!(parse_rational(s).is_err(), "{s:?} should not parse");
        }
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_sqrt(&rat(64, 9)), Some(rat(8, 3)));
        assert_eq!(rational_sqrt(&rat(0, 1)), Some(rat(0, 1)));
        assert_eq!(rational_sqrt(&rat(5, 1)), None);
        assert_eq!(rational_sqrt(&rat(4, 3)), None);
        assert_eq!(rational_sqrt(&rat(-4, 1)), None);
    }

    #[test]
    fn formatting_round_trips() {
        for x in [rat(5, 8), rat(-3, 1), rat(0, 1), rat(-22, 7)] {
            assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
        }
        assert_eq!(format_rational(&rat(5, 8)), "5/8");
        assert_eq!(format_rational(&rat(4, 2)), "2");
    }
}
