//! Exact decimal parsing and rendering over arbitrary-precision rationals.
//!
//! Right operands and context values never pass through binary floating
//! point: `0.1` parses to the rational 1/10 and renders back as `0.1`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("not a decimal number: {0:?}")]
pub struct DecimalParseError(pub String);

/// Parses an exact decimal literal (`-12`, `0.5`, `+600.00`) into a rational.
pub fn parse_decimal(text: &str) -> Result<Rat, DecimalParseError> {
    let s = text.trim();
    let err = || DecimalParseError(text.to_string());
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| err())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(Rat::new(numer * BigInt::from(sign), denom))
}

/// Renders a rational as an exact decimal when the denominator divides a
/// power of ten, falling back to `p/q` otherwise.
pub fn format_decimal(r: &Rat) -> String {
    let r = r.clone().reduced();
    if r.denom().is_one() {
        return r.numer().to_string();
    }
    // Count factors of 2 and 5 in the denominator.
    let mut d = r.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while (&d % &two).is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    if !d.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let scale = twos.max(fives);
    let scaled = (r.numer() * BigInt::from(10u32).pow(scale) / r.denom()).abs();
    let digits = scaled.to_string();
    let digits = if digits.len() <= scale as usize {
        format!("{}{}", "0".repeat(scale as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - scale as usize;
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{}.{}", &digits[..split], &digits[split..])
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_and_decimals() {
        assert_eq!(parse_decimal("600").unwrap(), rat(600));
        assert_eq!(parse_decimal("-90").unwrap(), rat(-90));
        assert_eq!(parse_decimal("0.1").unwrap(), Rat::new(1.into(), 10.into()));
        assert_eq!(parse_decimal("600.00").unwrap(), rat(600));
        assert_eq!(parse_decimal("+.5").unwrap(), Rat::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["abc", "", ".", "1e3", "1.2.3", "--1"] {
            assert!(parse_decimal(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn formats_round_trip() {
        for s in ["600", "-90", "0.1", "0.25", "-0.125", "180"] {
            let r = parse_decimal(s).unwrap();
            assert_eq!(format_decimal(&r), s.trim_start_matches('+'));
        }
        assert_eq!(format_decimal(&parse_decimal("600.00").unwrap()), "600");
        assert_eq!(format_decimal(&Rat::new(1.into(), 3.into())), "1/3");
    }
}
