//! Exact rational scalars and their text forms.
//!
//! Every monetary or probability quantity in the crate is a [`Scalar`], an
//! arbitrary-precision rational. Parsing never goes through `f64`, so
//! `"12.9"` is exactly `129/10`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Scalar {
    Scalar::new(BigInt::from(num), BigInt::from(den))
}

pub fn half() -> Scalar {
    ratio(1, 2)
}

fn malformed(text: &str, reason: &'static str) -> Error {
    Error::MalformedNumber {
        text: text.to_string(),
        reason,
    }
}

fn parse_digits(text: &str, digits: &str) -> Result<BigInt> {
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed(text, "expected decimal digits"));
    }
    digits
        .parse::<BigInt>()
        .map_err(|_| malformed(text, "expected decimal digits"))
}

/// Parses a plain decimal (`"13.1"`, `"-0.25"`, `"7"`) or a fraction
/// (`"31/39"`). A leading sign is only accepted when `allow_sign` is set.
pub fn parse_number(text: &str, allow_sign: bool) -> Result<Scalar> {
    let trimmed = text.trim();
    let (negative, body) = match trimmed.as_bytes().first() {
        Some(b'-') | Some(b'+') if !allow_sign => {
            return Err(malformed(text, "sign not allowed here"));
        }
        Some(b'-') => (true, &trimmed[1..]),
        Some(b'+') => (false, &trimmed[1..]),
        Some(_) => (false, trimmed),
        None => return Err(malformed(text, "empty string")),
    };

    let magnitude = if let Some((num, den)) = body.split_once('/') {
        let num = parse_digits(text, num)?;
        let den = parse_digits(text, den)?;
        if den.is_zero() {
            return Err(malformed(text, "zero denominator"));
        }
        Scalar::new(num, den)
    } else if let Some((whole, frac)) = body.split_once('.') {
        let whole = if whole.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(text, whole)?
        };
        let frac_value = parse_digits(text, frac)?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Scalar::new(whole * &scale + frac_value, scale)
    } else {
        Scalar::from_integer(parse_digits(text, body)?)
    };

    Ok(if negative { -magnitude } else { magnitude })
}

/// Parses a probability written as `a/b` or a decimal. Range checks are the
/// caller's business (see [`crate::model::TypeDistribution`]).
pub fn parse_probability(text: &str) -> Result<Scalar> {
    parse_number(text, false)
}

/// Finite decimal expansion, if the reduced denominator has no prime factors
/// other than 2 and 5.
pub fn exact_decimal(value: &Scalar) -> Option<String> {
    let mut den = value.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    let scaled = value * Scalar::from_integer(BigInt::from(10u32).pow(places));
    debug_assert!(scaled.is_integer());
    Some(place_point(&scaled.to_integer(), places))
}

fn place_point(scaled: &BigInt, places: u32) -> String {
    let negative = scaled.is_negative();
    let digits = scaled.abs().to_string();
    let places = places as usize;
    let body = if places == 0 {
        digits
    } else if digits.len() > places {
        let (whole, frac) = digits.split_at(digits.len() - places);
        format!("{whole}.{frac}")
    } else {
        format!("0.{}{}", "0".repeat(places - digits.len()), digits)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

/// Rounds to `places` decimals with ties going up (towards +inf) and always
/// prints exactly `places` fractional digits.
pub fn round_half_up(value: &Scalar, places: u32) -> String {
    let scale = Scalar::from_integer(BigInt::from(10u32).pow(places));
    let shifted = (value * scale + half()).floor().to_integer();
    place_point(&shifted, places)
}

/// `a/b` in lowest terms, or just `a` for integers.
pub fn fraction(value: &Scalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Shortest exact text: a finite decimal when one exists, else a fraction.
pub fn exact(value: &Scalar) -> String {
    exact_decimal(value).unwrap_or_else(|| fraction(value))
}

pub fn to_f64(value: &Scalar) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn midpoint(a: &Scalar, b: &Scalar) -> Scalar {
    (a + b) * half()
}

pub fn is_positive(value: &Scalar) -> bool {
    value.is_positive()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_number("12.9", false).unwrap(), ratio(129, 10));
        assert_eq!(parse_number("13.1", false).unwrap(), ratio(131, 10));
        assert_eq!(parse_number("7", false).unwrap(), int(7));
        assert_eq!(parse_number(".5", false).unwrap(), half());
        assert_eq!(parse_number("-0.25", true).unwrap(), ratio(-1, 4));
        assert_eq!(parse_number("31/39", false).unwrap(), ratio(31, 39));
        assert_eq!(
            parse_number("0.1000000000000000000000001", false).unwrap(),
            Scalar::new(BigInt::from(10u32).pow(24) + 1, BigInt::from(10u32).pow(25))
        );
    }

    #[test]
    fn rejects_malformed_numbers() {
        for bad in ["", "1.", "abc", "1/0", "1e3", "--1", "1.2.3", "0x10"] {
            assert!(parse_number(bad, true).is_err(), "{bad} should fail");
        }
        assert!(parse_number("-1", false).is_err());
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(round_half_up(&ratio(5, 19), 6), "0.263158");
        assert_eq!(round_half_up(&ratio(5, 49), 6), "0.102041");
        assert_eq!(round_half_up(&ratio(31, 39), 6), "0.794872");
        assert_eq!(round_half_up(&ratio(11, 19), 6), "0.578947");
        assert_eq!(round_half_up(&ratio(1, 8), 2), "0.13");
        assert_eq!(round_half_up(&int(1), 6), "1.000000");
        assert_eq!(round_half_up(&ratio(-1, 8), 2), "-0.12");
    }

    #[test]
    fn exact_text() {
        assert_eq!(exact(&ratio(129, 10)), "12.9");
        assert_eq!(exact(&ratio(11, 19)), "11/19");
        assert_eq!(exact(&ratio(-3, 40)), "-0.075");
        assert_eq!(exact(&int(0)), "0");
        assert_eq!(fraction(&ratio(20, 29)), "20/29");
    }
}
