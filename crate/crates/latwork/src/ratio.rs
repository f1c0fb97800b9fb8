//! Exact rational parsing and decimal formatting.
//!
//! Bounds and tolerances enter as decimal strings ("2.2726", "1e-6")
//! or fraction literals ("22726/10000") and live as exact rationals
//! from then on. Formatting rounds in a caller-chosen direction so
//! printed digits never overstate what was proved.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatioParseError {
    #[error("empty number")]
    Empty,
    #[error("malformed number '{0}'")]
    Malformed(String),
    #[error("zero denominator in '{0}'")]
    ZeroDenominator(String),
}

/// Parses "p/q", integer, decimal, and scientific forms into an exact
/// rational.
pub fn parse_rational(s: &str) -> Result<BigRational, RatioParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(RatioParseError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| RatioParseError::Malformed(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| RatioParseError::Malformed(s.to_string()))?;
        if d.is_zero() {
            return Err(RatioParseError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    // Split off a scientific exponent, then a fractional part.
    let (mantissa, exp10) = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e
                .parse()
                .map_err(|_| RatioParseError::Malformed(s.to_string()))?;
            (m, exp)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    let digits: String = [int_part, frac_part].concat();
    let body = digits.strip_prefix(['+', '-']).unwrap_or(&digits);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RatioParseError::Malformed(s.to_string()));
    }
    let n = BigInt::from_str(&digits).map_err(|_| RatioParseError::Malformed(s.to_string()))?;
    let scale = exp10 - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        BigRational::from_integer(n * ten.pow(scale as u32))
    } else {
        BigRational::new(n, ten.pow((-scale) as u32))
    })
}

fn scaled(x: &BigRational, places: usize) -> BigRational {
    x * BigRational::from_integer(BigInt::from(10u32).pow(places as u32))
}

fn render(scaled_int: BigInt, places: usize) -> String {
    let negative = scaled_int.is_negative();
    let mut digits = scaled_int.magnitude().to_string();
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places - digits.len() + 1), digits);
    }
    let point = digits.len() - places;
    let (int_part, frac_part) = digits.split_at(point);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

/// Largest decimal with `places` digits not exceeding `x`.
pub fn format_decimal_floor(x: &BigRational, places: usize) -> String {
    render(scaled(x, places).floor().to_integer(), places)
}

/// Smallest decimal with `places` digits not below `x`.
pub fn format_decimal_ceil(x: &BigRational, places: usize) -> String {
    render(scaled(x, places).ceil().to_integer(), places)
}

/// The rational p/q as a "p/q" literal in lowest terms.
pub fn format_fraction(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Exact integer nth root: the largest m with m^n <= x.
pub fn nth_root_floor(x: &BigUint, n: u32) -> BigUint {
    x.nth_root(n)
}

/// Nonnegative gcd of a list, zero for an empty list.
pub fn gcd_all(values: &[usize]) -> usize {
    values.iter().fold(0usize, |g, &v| g.gcd(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parses_common_forms() {
        assert_eq!(rat("2.2726"), BigRational::new(11363.into(), 5000.into()));
        assert_eq!(rat("22726/10000"), rat("2.2726"));
        assert_eq!(rat("1e-6"), BigRational::new(1.into(), 1000000.into()));
        assert_eq!(rat("2.5e3"), BigRational::from_integer(2500.into()));
        assert_eq!(rat("-0.5"), BigRational::new((-1).into(), 2.into()));
        assert_eq!(rat("42"), BigRational::from_integer(42.into()));
        assert_eq!(rat(" 3/2 "), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn rejects_junk() {
        for bad in ["", "x", "1.2.3", "1e", "--2", "1/0", "2,5"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn directed_formatting_brackets_the_value() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(format_decimal_floor(&third, 6), "0.333333");
        assert_eq!(format_decimal_ceil(&third, 6), "0.333334");
        let exact = rat("2.2726");
        assert_eq!(format_decimal_floor(&exact, 4), "2.2726");
        assert_eq!(format_decimal_ceil(&exact, 4), "2.2726");
        assert_eq!(format_decimal_floor(&rat("-1/3"), 2), "-0.34");
        assert_eq!(format_decimal_ceil(&rat("-1/3"), 2), "-0.33");
        assert_eq!(format_decimal_floor(&rat("7/2"), 0), "3");
    }

    #[test]
    fn fraction_form_is_reduced() {
        assert_eq!(format_fraction(&rat("22726/10000")), "11363/5000");
        assert_eq!(format_fraction(&rat("4/2")), "2");
    }

    #[test]
    fn integer_roots_round_down() {
        assert_eq!(nth_root_floor(&BigUint::from(63u32), 3u32), 3u32.into());
        assert_eq!(nth_root_floor(&BigUint::from(64u32), 3u32), 4u32.into());
        assert_eq!(nth_root_floor(&BigUint::from(65u32), 3u32), 4u32.into());
    }

    #[test]
    fn gcd_of_lags() {
        assert_eq!(gcd_all(&[2, 5]), 1);
        assert_eq!(gcd_all(&[4, 6]), 2);
        assert_eq!(gcd_all(&[]), 0);
        assert_eq!(gcd_all(&[3]), 3);
    }
}
