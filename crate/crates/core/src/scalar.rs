//! Exact scalar field used for every coordinate, weight, and value.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};
use thiserror::Error;

/// An exact ordered field.
///
/// Implemented for every `num_rational::Ratio<T>` over a signed integer
/// type, so the library runs on `Ratio<i64>` for quick experiments and on
/// `BigRational` (the crate-root [`Rational`](crate::Rational)) when
/// coordinates may grow without bound. Floating-point types are deliberately
/// not admitted: equality of singleton values and cone membership are
/// decided by exact sign tests.
pub trait Scalar: Clone + Ord + Hash + Debug + Display + Num + Signed + FromStr + Send + Sync + 'static {
    fn from_int(v: i64) -> Self;

    fn is_integral(&self) -> bool;

    /// Largest integer not above `self`.
    fn floor_value(&self) -> Self;

    fn two() -> Self {
        Self::from_int(2)
    }

    fn half(&self) -> Self {
        self.clone() / Self::two()
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Clone + Integer + Signed + Hash + Debug + Display + FromStr + FromPrimitive + Send + Sync + 'static,
{
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(T::from_i64(v).expect("integer out of range for scalar type"))
    }

    fn is_integral(&self) -> bool {
        self.is_integer()
    }

    fn floor_value(&self) -> Self {
        self.floor()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseScalarError {
    pub literal: String,
    pub reason: &'static str,
}

fn all_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses `"p"`, `"-p"`, `"p/q"` (with `q > 0`) or a decimal such as `"-0.25"`.
pub fn parse_scalar<S: Scalar>(literal: &str) -> Result<S, ParseScalarError> {
    let err = |reason| ParseScalarError {
        literal: literal.to_string(),
        reason,
    };
    let text = literal.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (numer, denom) = if let Some((n, d)) = body.split_once('/') {
        if !all_digits(n) || !all_digits(d) {
            return Err(err("expected digits around '/'"));
        }
        if d.bytes().all(|b| b == b'0') {
            return Err(err("zero denominator"));
        }
        (n.to_string(), d.to_string())
    } else if let Some((int, frac)) = body.split_once('.') {
        if !all_digits(int) || !all_digits(frac) {
            return Err(err("malformed decimal"));
        }
        (format!("{int}{frac}"), format!("1{}", "0".repeat(frac.len())))
    } else {
        if !all_digits(body) {
            return Err(err("expected an integer, p/q, or decimal"));
        }
        (body.to_string(), "1".to_string())
    };
    let sign = if negative { "-" } else { "" };
    S::from_str(&format!("{sign}{numer}/{denom}")).map_err(|_| err("value out of range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(s: &str) -> Rational {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(q("3"), Rational::from_int(3));
        assert_eq!(q("-3"), Rational::from_int(-3));
        assert_eq!(q("6/4"), Rational::from_int(3) / Rational::from_int(2));
        assert_eq!(q("-0.25"), Rational::from_int(-1) / Rational::from_int(4));
        assert_eq!(q("-0.25").to_string(), "-1/4");
        assert_eq!(q("4/2").to_string(), "2");
    }

    #[test]
    fn rejects_bad_literals() {
        for bad in ["1/0", "", "1/-2", "abc", "1.", "--1", "1/2/3", "0x10"] {
            assert!(parse_scalar::<Rational>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn small_ratio_backend_works() {
        let v: Ratio<i64> = parse_scalar("7/3").unwrap();
        assert_eq!(v.floor_value(), Ratio::from_int(2));
        assert!(!v.is_integral());
    }
}
