//! Scalar types usable as degrees.

use std::fmt;

use num_rational::Rational64;
use num_traits::{FromPrimitive, Num, ToPrimitive};

pub trait Degree: Num + FromPrimitive + Clone + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Parses decimal notation (`150`, `-2.75`, `1e3`).
    fn parse_decimal(text: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;
}

impl Degree for f64 {
    fn parse_decimal(text: &str) -> Option<Self> {
        text.trim().parse().ok().filter(|v: &f64| v.is_finite())
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Degree for f32 {
    fn parse_decimal(text: &str) -> Option<Self> {
        text.trim().parse().ok().filter(|v: &f32| v.is_finite())
    }

    fn to_f64(&self) -> f64 {
        f64::from(*self)
    }
}

impl Degree for Rational64 {
    /// Exact: `0.1` becomes `1/10`.
    fn parse_decimal(text: &str) -> Option<Self> {
        let text = text.trim();
        let (mantissa, exponent) = match text.find(['e', 'E']) {
            Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
            None => (text, 0),
        };
        let (negative, digits) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        let mut numer: i64 = 0;
        for c in int.chars().chain(frac.chars()) {
            numer = numer.checked_mul(10)?.checked_add(i64::from(c.to_digit(10)?))?;
        }
        let scale = exponent - i32::try_from(frac.len()).ok()?;
        let ten_pow = |n: u32| 10i64.checked_pow(n);
        let value = if scale >= 0 {
            Rational64::from_integer(numer.checked_mul(ten_pow(scale.unsigned_abs())?)?)
        } else {
            Rational64::new(numer, ten_pow(scale.unsigned_abs())?)
        };
        Some(if negative { -value } else { value })
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_decimals_are_exact() {
        assert_eq!(Rational64::parse_decimal("0.1"), Some(Rational64::new(1, 10)));
        assert_eq!(Rational64::parse_decimal("-2.75"), Some(Rational64::new(-11, 4)));
        assert_eq!(Rational64::parse_decimal("150"), Some(Rational64::from_integer(150)));
        assert_eq!(Rational64::parse_decimal("1.5e2"), Some(Rational64::from_integer(150)));
        assert_eq!(Rational64::parse_decimal("25e-1"), Some(Rational64::new(5, 2)));
        assert_eq!(Rational64::parse_decimal("abc"), None);
        assert_eq!(Rational64::parse_decimal("."), None);
        assert_eq!(Rational64::parse_decimal("99999999999999999999"), None);
    }

    #[test]
    fn floats() {
        assert_eq!(f64::parse_decimal("2.5"), Some(2.5));
        assert_eq!(f32::parse_decimal("2.5"), Some(2.5));
        assert_eq!(f64::parse_decimal("inf"), None);
    }
}
