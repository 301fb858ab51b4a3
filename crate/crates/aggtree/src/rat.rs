//! Exact rational arithmetic for energy values and edge lengths.
//!
//! Costs are built from ceilings, so floating point is never allowed to
//! enter a cost computation or comparison. Every energy quantity in this
//! crate is a `Rational`.

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{AggError, Result};

pub type Rational = Ratio<i64>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Parse "3", "-2", "21.9" or "3/2" into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || AggError::Parse(format!("not a rational number: `{t}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: i64 = num.trim().parse().map_err(|_| bad())?;
        let d: i64 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let i: i64 = if int == "-" { 0 } else { int.parse().map_err(|_| bad())? };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f: i64 = frac.parse().map_err(|_| bad())?;
        let scale = 10i64
            .checked_pow(frac.len() as u32)
            .ok_or_else(bad)?;
        let frac_part = Rational::new(f, scale);
        let int_part = rat(i.abs());
        let abs = int_part + frac_part;
        return Ok(if neg { -abs } else { abs });
    }
    let n: i64 = t.parse().map_err(|_| bad())?;
    Ok(rat(n))
}

/// Canonical text form: integers bare, finite decimals as decimals,
/// everything else as `num/den`. Stable across write/parse round trips.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    // A reduced denominator of the form 2^a * 5^b prints as an exact decimal.
    let mut d = *r.denom();
    let mut twos = 0u32;
    let mut fives = 0u32;
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d == 1 {
        let k = twos.max(fives);
        if let Some(pow) = 10i64.checked_pow(k) {
            if let Some(scaled) = r.numer().checked_mul(pow / r.denom()) {
                let neg = scaled < 0;
                let digits = format!("{:01$}", scaled.abs(), k as usize + 1);
                let (int, frac) = digits.split_at(digits.len() - k as usize);
                let frac = frac.trim_end_matches('0');
                let frac = if frac.is_empty() { "0" } else { frac };
                return format!("{}{}.{}", if neg { "-" } else { "" }, int, frac);
            }
        }
    }
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact ceiling of a non-negative rational, as an integer.
pub fn ceil_to_int(r: &Rational) -> i64 {
    debug_assert!(!r.is_negative());
    r.ceil().to_integer()
}

pub fn is_positive(r: &Rational) -> bool {
    r > &Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_integers_and_fractions() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-2").unwrap(), rat(-2));
        assert_eq!(parse_rational("3/2").unwrap(), Rational::new(3, 2));
        assert_eq!(parse_rational("21.9").unwrap(), Rational::new(219, 10));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(format_rational(&Rational::new(219, 10)), "21.9");
        assert_eq!(format_rational(&Rational::new(3, 2)), "1.5");
        assert_eq!(format_rational(&Rational::new(1, 3)), "1/3");
        assert_eq!(format_rational(&Rational::new(-5, 4)), "-1.25");
    }

    #[test]
    fn round_trip_is_stable() {
        for text in ["2", "1.5", "219/10", "1/3", "-7/3"] {
            let once = format_rational(&parse_rational(text).unwrap());
            let twice = format_rational(&parse_rational(&once).unwrap());
            assert_eq!(once, twice);
        }
    }

    #[test]
    fn exact_ceilings() {
        assert_eq!(ceil_to_int(&Rational::new(5, 2)), 3);
        assert_eq!(ceil_to_int(&rat(4)), 4);
        assert_eq!(ceil_to_int(&Rational::new(1, 10)), 1);
        assert_eq!(ceil_to_int(&Rational::new(0, 1)), 0);
    }
}
