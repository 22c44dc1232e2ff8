//! The extended potential over all integer vectors and its exchange
//! inequalities.
//!
//! `f(x)` equals the potential when `x` lies in the domain and is bottom
//! (minus infinity) otherwise. M-concavity of `f` is what turns local
//! potential maxima into global ones; the checkers here verify the
//! strengthened form of the exchange inequality, quantified over *every*
//! receiving index, which drives the structure of the equilibrium set.

use crate::error::Result;
use crate::model::{GameSetting, LoadVector};
use crate::value::{Rational, Value};
use std::cmp::Ordering;

/// A potential value extended with a sum-absorbing bottom element. Bottom
/// compares below every finite value, so the exact backend stays exact.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedValue {
    Bottom,
    Finite(Value),
}

impl ExtendedValue {
    fn finite_exact(r: Rational) -> Self {
        ExtendedValue::Finite(Value::Exact(r))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, ExtendedValue::Bottom)
    }

    /// Bottom-absorbing addition.
    pub fn plus(&self, other: &ExtendedValue) -> ExtendedValue {
        match (self, other) {
            (ExtendedValue::Finite(Value::Exact(a)), ExtendedValue::Finite(Value::Exact(b))) => {
                ExtendedValue::finite_exact(a + b)
            }
            (ExtendedValue::Finite(Value::Float(a)), ExtendedValue::Finite(Value::Float(b))) => {
                ExtendedValue::Finite(Value::Float(a + b))
            }
            (ExtendedValue::Finite(_), ExtendedValue::Finite(_)) => {
                panic!("mixed numeric backends in ExtendedValue::plus")
            }
            _ => ExtendedValue::Bottom,
        }
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (ExtendedValue::Bottom, ExtendedValue::Bottom) => Some(Ordering::Equal),
            (ExtendedValue::Bottom, ExtendedValue::Finite(_)) => Some(Ordering::Less),
            (ExtendedValue::Finite(_), ExtendedValue::Bottom) => Some(Ordering::Greater),
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => a.partial_cmp(b),
        }
    }
}

/// One violated exchange inequality: moving a unit from `u` to `v` between
/// `x` and `y` decreased the paired sum. `lhs = f(x) + f(y)` and
/// `rhs = f(x - e_u + e_v) + f(y - e_v + e_u)`.
#[derive(Clone, Debug)]
pub struct ExchangeWitness {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub u: usize,
    pub v: usize,
    pub lhs: ExtendedValue,
    pub rhs: ExtendedValue,
}

/// Indices where `a - b` is strictly positive.
pub fn positive_support(a: &[i64], b: &[i64]) -> Vec<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (&ai, &bi))| ai > bi)
        .map(|(i, _)| i)
        .collect()
}

/// The extended potential: `Pot(x)` when `x` has nonnegative entries
/// summing to `K`, bottom otherwise. Always exact.
pub fn extended_f(setting: &GameSetting, x: &[i64]) -> ExtendedValue {
    assert_eq!(x.len(), setting.media_count(), "vector length must equal J");
    if x.iter().any(|&c| c < 0) {
        return ExtendedValue::Bottom;
    }
    let sum: i64 = x.iter().sum();
    if sum as u64 != setting.seeds() {
        return ExtendedValue::Bottom;
    }
    let loads: Vec<u64> = x.iter().map(|&c| c as u64).collect();
    ExtendedValue::finite_exact(setting.potential_unchecked(&loads))
}

/// The scaled potential of step `alpha` anchored at `x0`:
/// `f(x0 + alpha * y)`.
pub fn scaled_f(setting: &GameSetting, x0: &LoadVector, alpha: u64, y: &[i64]) -> ExtendedValue {
    assert!(alpha >= 1, "scaling step must be positive");
    let shifted: Vec<i64> = x0
        .iter()
        .zip(y)
        .map(|(&base, &step)| base as i64 + alpha as i64 * step)
        .collect();
    extended_f(setting, &shifted)
}

/// Verifies the exchange inequality for every admissible pair `(u, v)`:
/// for all `u` where `x` exceeds `y` and all `v` where `y` exceeds `x`,
///
/// ```text
/// f(x) + f(y) <= f(x - e_u + e_v) + f(y - e_v + e_u).
/// ```
///
/// Returns whether all inequalities hold together with every violating
/// witness (expected none for vectors in the domain).
pub fn exchange_check(
    setting: &GameSetting,
    x: &LoadVector,
    y: &LoadVector,
) -> Result<(bool, Vec<ExchangeWitness>)> {
    setting.check_load(x)?;
    setting.check_load(y)?;
    let x: Vec<i64> = x.iter().map(|&c| c as i64).collect();
    let y: Vec<i64> = y.iter().map(|&c| c as i64).collect();
    Ok(exchange_check_raw(
        &|z| extended_f(setting, z),
        &x,
        &y,
    ))
}

/// Exchange check for the scaled potential: both `y` and `z` must index
/// points `x0 + alpha * y` inside the domain for the check to be
/// informative, but any integer vectors are accepted.
pub fn scaled_exchange_check(
    setting: &GameSetting,
    x0: &LoadVector,
    alpha: u64,
    y: &[i64],
    z: &[i64],
) -> Result<(bool, Vec<ExchangeWitness>)> {
    setting.check_load(x0)?;
    Ok(exchange_check_raw(
        &|w| scaled_f(setting, x0, alpha, w),
        y,
        z,
    ))
}

fn exchange_check_raw(
    f: &dyn Fn(&[i64]) -> ExtendedValue,
    x: &[i64],
    y: &[i64],
) -> (bool, Vec<ExchangeWitness>) {
    let lhs = f(x).plus(&f(y));
    let mut witnesses = Vec::new();
    for &u in &positive_support(x, y) {
        for &v in &positive_support(y, x) {
            let x_moved = shift(x, u, v);
            let y_moved = shift(y, v, u);
            let rhs = f(&x_moved).plus(&f(&y_moved));
            if lhs > rhs {
                witnesses.push(ExchangeWitness {
                    x: x.to_vec(),
                    y: y.to_vec(),
                    u,
                    v,
                    lhs: lhs.clone(),
                    rhs,
                });
            }
        }
    }
    (witnesses.is_empty(), witnesses)
}

fn shift(vector: &[i64], from: usize, to: usize) -> Vec<i64> {
    let mut out = vector.to_vec();
    out[from] -= 1;
    out[to] += 1;
    out
}
