//! Parsing and formatting of exact rationals.
//!
//! Rationals travel as strings in every structured artifact: plain integers
//! (`"-5"`), exact decimals (`"0.5"`), or fractions (`"-31/6"`). Parsing
//! accepts all three forms and is exact; formatting picks a decimal only when
//! the denominator is of the form 2^a 5^b, so round-trips preserve the value
//! bit for bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, `"-5"`, or `"0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let (sign, int_digits) = match int_part.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, int_part.strip_prefix('+').unwrap_or(int_part)),
        };
        if int_digits.is_empty() && frac_part.is_empty() {
            return Err(ParseRationalError::Invalid(s.to_string()));
        }
        if !int_digits.chars().all(|c| c.is_ascii_digit())
            || !frac_part.chars().all(|c| c.is_ascii_digit())
        {
            return Err(ParseRationalError::Invalid(s.to_string()));
        }
        let mut digits = String::with_capacity(int_digits.len() + frac_part.len());
        digits.push_str(int_digits);
        digits.push_str(frac_part);
        if digits.is_empty() {
            return Err(ParseRationalError::Invalid(s.to_string()));
        }
        let n: BigInt = digits
            .parse()
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(n * sign, d));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
    Ok(BigRational::from_integer(n))
}

/// Formats exactly: integer, exact decimal when the denominator is 2^a 5^b,
/// otherwise `p/q`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        return q.numer().to_string();
    }
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0u32;
    let mut fives = 0u32;
    while (&den % &two).is_zero() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", q.numer(), q.denom());
    }
    // scale to 10^k with k = max(twos, fives)
    let k = twos.max(fives);
    let scaled = (q * BigRational::from_integer(BigInt::from(10u32).pow(k))).to_integer();
    let neg = scaled.is_negative();
    let digits = scaled.magnitude().to_string();
    let digits = if digits.len() <= k as usize {
        format!("{}{}", "0".repeat(k as usize + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - k as usize;
    let (int_part, frac_part) = digits.split_at(split);
    format!("{}{}.{}", if neg { "-" } else { "" }, int_part, frac_part)
}

/// Convenience constructor from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Nearest f64, via numerator/denominator division (good to ~1 ulp at the
/// magnitudes this engine produces).
pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-5").unwrap(), rat_int(-5));
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-31/6").unwrap(), rat(-31, 6));
        assert_eq!(parse_rational("-0.5").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("a/b").is_err());
    }

    #[test]
    fn format_forms() {
        assert_eq!(format_rational(&rat_int(-5)), "-5");
        assert_eq!(format_rational(&rat(1, 2)), "0.5");
        assert_eq!(format_rational(&rat(-1, 8)), "-0.125");
        assert_eq!(format_rational(&rat(1, 3)), "1/3");
        assert_eq!(format_rational(&rat(-31, 6)), "-31/6");
        assert_eq!(format_rational(&rat(1, 20)), "0.05");
    }

    proptest! {
        #[test]
        fn round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let q = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
