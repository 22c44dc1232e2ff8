//! Harmonic numbers `H(n) = 1 + 1/2 + ... + 1/n`, with `H(n) = 0` for
//! `n <= 0`.
//!
//! Exact values are served from a dense prefix table for small `n` plus a
//! sparse memo above it, both grown on demand; storing a dense exact table
//! far out would take quadratic memory. Each value is computed once per
//! process and every reader observes the same result.
//!
//! Float values come from a dense prefix table up to [`FLOAT_TABLE_LIMIT`]
//! and the asymptotic expansion beyond, accurate to well below the float
//! backend tolerance.

use crate::value::{Backend, Rational, Value};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::RwLock;

/// Largest index kept in the dense exact prefix table.
const EXACT_TABLE_LIMIT: u64 = 1024;
/// Largest index kept in the dense float prefix table.
const FLOAT_TABLE_LIMIT: u64 = 1 << 20;

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

static EXACT_TABLE: RwLock<Vec<Rational>> = RwLock::new(Vec::new());
static EXACT_MEMO: RwLock<BTreeMap<u64, Rational>> = RwLock::new(BTreeMap::new());
static FLOAT_TABLE: RwLock<Vec<f64>> = RwLock::new(Vec::new());

/// The harmonic number `H(n)` on the requested backend.
pub fn harmonic(n: i64, backend: Backend) -> Value {
    if n <= 0 {
        return Value::zero(backend);
    }
    match backend {
        Backend::Exact => Value::Exact(harmonic_exact(n as u64)),
        Backend::Float => Value::Float(harmonic_f64(n as u64)),
    }
}

/// Exact `H(n)` for `n >= 0`.
pub fn harmonic_exact(n: u64) -> Rational {
    if n <= EXACT_TABLE_LIMIT {
        return dense_exact(n);
    }
    if let Some(hit) = EXACT_MEMO.read().unwrap().get(&n) {
        return hit.clone();
    }
    let mut memo = EXACT_MEMO.write().unwrap();
    if let Some(hit) = memo.get(&n) {
        return hit.clone();
    }
    // Extend from the closest value we already know.
    let (start, base) = match memo.range(..n).next_back() {
        Some((&k, v)) => (k, v.clone()),
        None => (EXACT_TABLE_LIMIT, dense_exact(EXACT_TABLE_LIMIT)),
    };
    let value = base + harmonic_span_exact(start, n);
    memo.insert(n, value.clone());
    value
}

/// Exact `H(to) - H(from)`, the sum of `1/i` over `from < i <= to`.
///
/// Computed by binary splitting on unreduced fractions with a single
/// reduction at the end; one big gcd beats thousands of incremental ones.
pub fn harmonic_span_exact(from: u64, to: u64) -> Rational {
    assert!(from <= to, "span bounds out of order");
    if from == to {
        return Rational::zero();
    }
    let (numer, denom) = split_sum(from, to);
    Rational::new(numer, denom)
}

/// Unreduced `(numerator, denominator)` of the reciprocal sum over
/// `(from, to]`.
fn split_sum(from: u64, to: u64) -> (BigInt, BigInt) {
    if to - from == 1 {
        return (BigInt::one(), BigInt::from(to));
    }
    let middle = from + (to - from) / 2;
    let (left_numer, left_denom) = split_sum(from, middle);
    let (right_numer, right_denom) = split_sum(middle, to);
    (
        left_numer * &right_denom + right_numer * &left_denom,
        left_denom * right_denom,
    )
}

fn dense_exact(n: u64) -> Rational {
    let n = n as usize;
    {
        let table = EXACT_TABLE.read().unwrap();
        if let Some(hit) = table.get(n) {
            return hit.clone();
        }
    }
    let mut table = EXACT_TABLE.write().unwrap();
    if table.is_empty() {
        table.push(Rational::zero());
    }
    while table.len() <= n {
        let i = table.len() as u64;
        let next = table.last().unwrap() + Rational::new(BigInt::one(), BigInt::from(i));
        table.push(next);
    }
    table[n].clone()
}

/// Float `H(n)` for `n >= 0`.
pub fn harmonic_f64(n: u64) -> f64 {
    if n <= FLOAT_TABLE_LIMIT {
        return dense_f64(n);
    }
    let x = n as f64;
    x.ln() + EULER_MASCHERONI + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
        + 1.0 / (120.0 * x * x * x * x)
}

fn dense_f64(n: u64) -> f64 {
    let n = n as usize;
    {
        let table = FLOAT_TABLE.read().unwrap();
        if let Some(hit) = table.get(n) {
            return *hit;
        }
    }
    let mut table = FLOAT_TABLE.write().unwrap();
    if table.is_empty() {
        table.push(0.0);
    }
    // Kahan-compensated growth keeps the table within the backend tolerance.
    let mut sum = *table.last().unwrap();
    let mut carry = 0.0f64;
    for i in table.len()..=n {
        let term = 1.0 / i as f64 - carry;
        let fresh = sum + term;
        carry = (fresh - sum) - term;
        sum = fresh;
        table.push(sum);
    }
    table[n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    #[test]
    fn small_exact_values() {
        assert_eq!(harmonic(0, Backend::Exact), Value::Exact(int(0)));
        assert_eq!(harmonic(-5, Backend::Exact), Value::Exact(int(0)));
        assert_eq!(harmonic(1, Backend::Exact), Value::Exact(int(1)));
        assert_eq!(harmonic(3, Backend::Exact), Value::Exact(ratio(11, 6)));
        assert_eq!(harmonic_exact(5), ratio(137, 60));
    }

    #[test]
    fn exact_crosses_the_dense_limit() {
        let just_past = harmonic_exact(EXACT_TABLE_LIMIT + 3);
        let rebuilt = harmonic_exact(EXACT_TABLE_LIMIT)
            + ratio(1, (EXACT_TABLE_LIMIT + 1) as i64)
            + ratio(1, (EXACT_TABLE_LIMIT + 2) as i64)
            + ratio(1, (EXACT_TABLE_LIMIT + 3) as i64);
        assert_eq!(just_past, rebuilt);
        // Memoized points serve as later starting points.
        let further = harmonic_exact(EXACT_TABLE_LIMIT + 5);
        assert_eq!(
            further,
            just_past
                + ratio(1, (EXACT_TABLE_LIMIT + 4) as i64)
                + ratio(1, (EXACT_TABLE_LIMIT + 5) as i64)
        );
    }

    #[test]
    fn spans_match_prefix_differences() {
        assert_eq!(harmonic_span_exact(7, 7), int(0));
        for (from, to) in [(0u64, 1u64), (0, 17), (5, 6), (3, 100), (90, 260)] {
            assert_eq!(
                harmonic_span_exact(from, to),
                harmonic_exact(to) - harmonic_exact(from),
                "span ({from}, {to}]"
            );
        }
    }

    #[test]
    fn float_matches_exact_at_small_n() {
        for n in 0..200u64 {
            let exact = crate::value::rational_to_f64(&harmonic_exact(n));
            assert!((harmonic_f64(n) - exact).abs() < 1e-12, "n = {n}");
        }
    }

    #[test]
    fn float_expansion_is_continuous_at_the_table_limit() {
        let table = harmonic_f64(FLOAT_TABLE_LIMIT);
        let x = (FLOAT_TABLE_LIMIT + 1) as f64;
        let expansion = x.ln() + EULER_MASCHERONI + 1.0 / (2.0 * x) - 1.0 / (12.0 * x * x)
            + 1.0 / (120.0 * x * x * x * x);
        assert!((expansion - table - 1.0 / x).abs() < 1e-10);
    }
}
