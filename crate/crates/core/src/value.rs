//! Numeric backends.
//!
//! Every decision that can tie (Nash tests, argmax tie-breaks, equilibrium
//! enumeration) runs on exact rational arithmetic. The float backend exists
//! for large-`K` sweeps and learning runs where only the running argmax
//! matters and full-precision rationals would be needlessly slow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact scalar carried by the exact backend.
pub type Rational = BigRational;

/// Absolute tolerance used when comparing float-backend values.
pub const FLOAT_EPS: f64 = 1e-9;

/// Arithmetic carrier selector.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Backend {
    /// Arbitrary-precision rationals; comparisons are decidable equality.
    #[default]
    Exact,
    /// `f64`; equality means agreement within [`FLOAT_EPS`].
    Float,
}

/// A scalar tagged with the backend that produced it.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl Value {
    pub fn zero(backend: Backend) -> Self {
        match backend {
            Backend::Exact => Value::Exact(Rational::zero()),
            Backend::Float => Value::Float(0.0),
        }
    }

    pub fn from_integer(n: i64, backend: Backend) -> Self {
        match backend {
            Backend::Exact => Value::Exact(Rational::from_integer(BigInt::from(n))),
            Backend::Float => Value::Float(n as f64),
        }
    }

    pub fn backend(&self) -> Backend {
        match self {
            Value::Exact(_) => Backend::Exact,
            Value::Float(_) => Backend::Float,
        }
    }

    /// The exact payload, if this value came from the exact backend.
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            Value::Float(_) => None,
        }
    }

    /// Lossy view of either backend as `f64`.
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => rational_to_f64(r),
            Value::Float(x) => *x,
        }
    }

    /// Backend-appropriate equality: decidable for exact values, within
    /// [`FLOAT_EPS`] for floats. Values from different backends never
    /// compare equal.
    pub fn approx_eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => (a - b).abs() <= FLOAT_EPS,
            _ => false,
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a == b,
            (Value::Float(a), Value::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialOrd for Value {
    /// Ordered within a backend; values from different backends are
    /// incomparable.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => Some(a.cmp(b)),
            (Value::Float(a), Value::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Float(x) => write!(f, "{x}"),
        }
    }
}

/// `BigRational` to `f64`, defaulting to infinity of the right sign when the
/// magnitude overflows.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Builds the rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Builds the integer rational `n`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a bare integer `"n"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let numer: BigInt = p.trim().parse().ok()?;
            let denom: BigInt = q.trim().parse().ok()?;
            if denom.is_zero() {
                return None;
            }
            Some(Rational::new(numer, denom))
        }
        None => {
            let n: BigInt = text.parse().ok()?;
            Some(Rational::from_integer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_drops_unit_denominator() {
        assert_eq!(int(1).to_string(), "1");
        assert_eq!(ratio(5, 9).to_string(), "5/9");
        assert_eq!(ratio(-4, 2).to_string(), "-2");
    }

    #[test]
    fn parse_accepts_fractions_and_integers() {
        assert_eq!(parse_rational("5/9"), Some(ratio(5, 9)));
        assert_eq!(parse_rational("0/1"), Some(int(0)));
        assert_eq!(parse_rational("-3"), Some(int(-3)));
        assert_eq!(parse_rational(" 7 / 2 "), Some(ratio(7, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn values_compare_within_backend_only() {
        let a = Value::Exact(ratio(1, 2));
        let b = Value::Exact(ratio(2, 3));
        assert!(a < b);
        assert_eq!(Value::Float(0.5).partial_cmp(&a), None);
        assert!(Value::Float(0.5).approx_eq(&Value::Float(0.5 + 1e-12)));
        assert!(!Value::Float(0.5).approx_eq(&Value::Float(0.5 + 1e-6)));
    }
}
