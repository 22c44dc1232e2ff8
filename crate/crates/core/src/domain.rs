//! Iteration over the load-vector domain: all vectors of `media`
//! nonnegative integers summing to `seeds`.

use crate::model::LoadVector;

/// Number of load vectors in the domain, `C(K + J - 1, J - 1)`, or `None`
/// on overflow.
pub fn domain_size(media: usize, seeds: u64) -> Option<u128> {
    binomial_u128(seeds as u128 + media as u128 - 1, media as u128 - 1)
}

/// `C(n, k)` in `u128`, `None` on overflow.
pub fn binomial_u128(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        // Multiply before dividing; the running product of i+1 consecutive
        // binomials is always divisible by i+1.
        result = result.checked_mul(n - i)? / (i + 1);
    }
    Some(result)
}

/// Iterates the domain in ascending lexicographic order, starting at
/// `(0, ..., 0, K)` and ending at `(K, 0, ..., 0)`.
pub fn domain(media: usize, seeds: u64) -> DomainIter {
    assert!(media >= 1, "domain requires at least one medium");
    let mut first = vec![0u64; media];
    first[media - 1] = seeds;
    DomainIter { next: Some(first) }
}

pub struct DomainIter {
    next: Option<Vec<u64>>,
}

impl Iterator for DomainIter {
    type Item = LoadVector;

    fn next(&mut self) -> Option<LoadVector> {
        let current = self.next.take()?;
        self.next = successor(&current);
        Some(LoadVector::new(current))
    }
}

fn successor(current: &[u64]) -> Option<Vec<u64>> {
    let media = current.len();
    // Rightmost positive component feeds the increment to its left; the
    // remainder drops to the last position.
    let pivot = current.iter().rposition(|&l| l > 0)?;
    if pivot == 0 {
        return None;
    }
    let mut next = current.to_vec();
    next[pivot - 1] += 1;
    let rest = next[pivot] - 1;
    next[pivot] = 0;
    next[media - 1] += rest;
    Some(next)
}
