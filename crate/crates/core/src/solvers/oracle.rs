//! Ground truth: exhaustive potential maximization over the whole domain,
//! and complete equilibrium enumeration from a single equilibrium.

use crate::domain::{domain, domain_size};
use crate::error::{Error, Result};
use crate::harmonic::harmonic_exact;
use crate::model::{GameSetting, LoadVector};
use crate::solvers::learning::order_learning;
use crate::value::{Backend, Rational, Value};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on the number of load vectors a brute-force scan may visit.
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 10_000_000;

/// The set of equilibrium loads of a setting. All members share one exact
/// potential, lie within Chebyshev distance one of each other, and number
/// at most `C(J, floor(J/2))`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquilibriumSet {
    members: Vec<LoadVector>,
    potential: Value,
}

impl EquilibriumSet {
    fn from_parts(mut members: Vec<LoadVector>, potential: Rational) -> Self {
        assert!(!members.is_empty(), "equilibrium set cannot be empty");
        members.sort();
        members.dedup();
        EquilibriumSet {
            members,
            potential: Value::Exact(potential),
        }
    }

    /// Members in ascending lexicographic order.
    pub fn members(&self) -> &[LoadVector] {
        &self.members
    }

    /// The exact potential shared by every member.
    pub fn potential(&self) -> &Value {
        &self.potential
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, load: &LoadVector) -> bool {
        self.members.binary_search(load).is_ok()
    }
}

/// Exhaustively enumerates the domain and returns every global potential
/// maximizer, under the default enumeration budget.
pub fn brute_force_equilibria(setting: &GameSetting) -> Result<EquilibriumSet> {
    brute_force_equilibria_with_budget(setting, DEFAULT_ENUMERATION_BUDGET)
}

/// [`brute_force_equilibria`] with an explicit budget on domain size.
pub fn brute_force_equilibria_with_budget(
    setting: &GameSetting,
    budget: u128,
) -> Result<EquilibriumSet> {
    check_budget(setting, budget)?;
    // Touch the largest harmonic number once so concurrent scans only ever
    // read the cache.
    harmonic_exact(setting.seeds());

    #[cfg(feature = "parallel")]
    {
        Ok(scan_parallel(setting))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(scan_sequential(setting))
    }
}

/// Sequential scan, available regardless of the `parallel` feature; the
/// parallel path must produce the identical set.
pub fn brute_force_equilibria_sequential(
    setting: &GameSetting,
    budget: u128,
) -> Result<EquilibriumSet> {
    check_budget(setting, budget)?;
    harmonic_exact(setting.seeds());
    Ok(scan_sequential(setting))
}

fn check_budget(setting: &GameSetting, budget: u128) -> Result<()> {
    let points = domain_size(setting.media_count(), setting.seeds()).unwrap_or(u128::MAX);
    if points > budget {
        return Err(Error::EnumerationBudget { points, budget });
    }
    Ok(())
}

fn scan_sequential(setting: &GameSetting) -> EquilibriumSet {
    let best = scan_iter(setting, domain(setting.media_count(), setting.seeds()));
    let (potential, members) = best.expect("domain is never empty");
    EquilibriumSet::from_parts(members, potential)
}

#[cfg(feature = "parallel")]
fn scan_parallel(setting: &GameSetting) -> EquilibriumSet {
    let media = setting.media_count();
    let seeds = setting.seeds();
    if media == 1 {
        return scan_sequential(setting);
    }
    // Partition by the first coordinate; each worker scans one slab. Exact
    // comparisons make the merge associative, so the reduction order cannot
    // change the result.
    let best = (0..=seeds)
        .into_par_iter()
        .map(|first| {
            scan_iter(
                setting,
                domain(media - 1, seeds - first).map(move |rest| {
                    let mut loads = Vec::with_capacity(media);
                    loads.push(first);
                    loads.extend_from_slice(&rest);
                    LoadVector::new(loads)
                }),
            )
        })
        .reduce(|| None, merge_best);
    let (potential, members) = best.expect("domain is never empty");
    EquilibriumSet::from_parts(members, potential)
}

type Best = Option<(Rational, Vec<LoadVector>)>;

fn scan_iter(setting: &GameSetting, candidates: impl Iterator<Item = LoadVector>) -> Best {
    let mut best = None;
    for load in candidates {
        let potential = setting.potential_unchecked(&load);
        best = merge_best(best, Some((potential, vec![load])));
    }
    best
}

fn merge_best(a: Best, b: Best) -> Best {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some((pa, mut ma)), Some((pb, mb))) => {
            if pa > pb {
                Some((pa, ma))
            } else if pb > pa {
                Some((pb, mb))
            } else {
                ma.extend(mb);
                Some((pa, ma))
            }
        }
    }
}

/// The complete equilibrium set, computed without scanning the domain:
/// one learning run yields an equilibrium (a global potential maximizer),
/// and every other equilibrium lies within Chebyshev distance one of it,
/// so scanning the `{-1, 0, +1}` ball for exact potential ties finds all
/// of them.
///
/// Completeness leans on the distance-one theorem, whose proof needs every
/// subscriber count positive; with several zero-subscriber media the tied
/// region can stretch further. The brute-force oracle stays authoritative
/// in that regime.
pub fn enumerate_equilibria(setting: &GameSetting) -> EquilibriumSet {
    let anchor = order_learning(setting, Backend::Exact).final_load;
    let media = setting.media_count();

    // Potential differences of ball members against the anchor are sums of
    // per-medium marginal terms; no full potential is evaluated.
    let insert_gain: Vec<Rational> = (0..media)
        .map(|j| setting.marginal_exact(&anchor, j))
        .collect();
    let remove_drop: Vec<Option<Rational>> = (0..media)
        .map(|j| (anchor[j] > 0).then(|| setting.departure_exact(&anchor, j)))
        .collect();

    let mut members = Vec::new();
    let mut steps = vec![0i8; media];
    ball_scan(
        setting,
        &anchor,
        &insert_gain,
        &remove_drop,
        &mut steps,
        0,
        0,
        &mut members,
    );
    let potential = setting.potential_unchecked(&anchor);
    EquilibriumSet::from_parts(members, potential)
}

/// Depth-first walk over `steps in {-1,0,+1}^J` with zero total, collecting
/// anchor-shifted vectors whose potential difference is exactly zero.
#[allow(clippy::too_many_arguments)]
fn ball_scan(
    setting: &GameSetting,
    anchor: &LoadVector,
    insert_gain: &[Rational],
    remove_drop: &[Option<Rational>],
    steps: &mut Vec<i8>,
    position: usize,
    balance: i64,
    members: &mut Vec<LoadVector>,
) {
    let media = setting.media_count();
    if position == media {
        if balance != 0 {
            return;
        }
        let mut difference = Rational::from_integer(0.into());
        let mut loads = Vec::with_capacity(media);
        for j in 0..media {
            match steps[j] {
                1 => {
                    difference += &insert_gain[j];
                    loads.push(anchor[j] + 1);
                }
                -1 => {
                    // A -1 step is only generated when the load is positive.
                    difference -= remove_drop[j].as_ref().unwrap();
                    loads.push(anchor[j] - 1);
                }
                _ => loads.push(anchor[j]),
            }
        }
        if difference == Rational::from_integer(0.into()) {
            members.push(LoadVector::new(loads));
        }
        return;
    }
    let remaining = (media - position - 1) as i64;
    for step in [-1i8, 0, 1] {
        if step == -1 && anchor[position] == 0 {
            continue;
        }
        let next = balance + step as i64;
        // The remaining positions can shift the balance by at most one each.
        if next.abs() > remaining {
            continue;
        }
        steps[position] = step;
        ball_scan(
            setting,
            anchor,
            insert_gain,
            remove_drop,
            steps,
            position + 1,
            next,
            members,
        );
    }
    steps[position] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MediumParams;
    use crate::value::{int, ratio};

    fn setting(seeds: u64, params: &[(u64, i64)]) -> GameSetting {
        GameSetting::new(
            seeds,
            params
                .iter()
                .map(|&(n, g)| MediumParams::new(n, int(g)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn loadset(loads: &[&[u64]]) -> Vec<LoadVector> {
        let mut out: Vec<LoadVector> = loads.iter().map(|l| LoadVector::new(l.to_vec())).collect();
        out.sort();
        out
    }

    #[test]
    fn oracle_finds_tied_maximizers() {
        let set = brute_force_equilibria(&setting(2, &[(4, 0), (2, 0)])).unwrap();
        assert_eq!(set.members(), &loadset(&[&[2, 0], &[1, 1]])[..]);
        assert_eq!(set.potential(), &Value::Exact(int(6)));
    }

    #[test]
    fn oracle_on_the_symmetric_pair() {
        let set = brute_force_equilibria(&setting(1, &[(5, 1), (5, 1)])).unwrap();
        assert_eq!(set.members(), &loadset(&[&[1, 0], &[0, 1]])[..]);
        assert_eq!(set.len(), 2);
    }

    #[test]
    fn oracle_unique_maximizer() {
        let set = brute_force_equilibria(&setting(3, &[(100, 2), (25, 1), (20, 1)])).unwrap();
        assert_eq!(set.members(), &loadset(&[&[3, 0, 0]])[..]);
    }

    #[test]
    fn budget_is_enforced() {
        let err = brute_force_equilibria_with_budget(&setting(100, &[(5, 1), (5, 1)]), 50)
            .unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationBudget { points: 101, budget: 50 }
        ));
    }

    #[test]
    fn sequential_and_default_scans_agree() {
        let g = setting(9, &[(31, 2), (17, 0), (5, 1)]);
        let default = brute_force_equilibria(&g).unwrap();
        let sequential =
            brute_force_equilibria_sequential(&g, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(default, sequential);
    }

    #[test]
    fn enumeration_matches_the_oracle() {
        for params in [
            vec![(4u64, 0i64), (2, 0)],
            vec![(5, 1), (5, 1)],
            vec![(100, 2), (25, 1), (20, 1)],
            vec![(7, 3), (7, 3), (7, 3)],
        ] {
            for seeds in 0..=8u64 {
                let g = setting(seeds, &params);
                let fast = enumerate_equilibria(&g);
                let oracle = brute_force_equilibria(&g).unwrap();
                assert_eq!(fast, oracle, "params {params:?}, K = {seeds}");
            }
        }
    }

    #[test]
    fn enumeration_handles_the_zero_seed_game() {
        let g = setting(0, &[(4, 0), (2, 0)]);
        let set = enumerate_equilibria(&g);
        assert_eq!(set.members(), &loadset(&[&[0, 0]])[..]);
        assert_eq!(set.potential(), &Value::Exact(int(0)));
    }

    #[test]
    fn enumeration_with_a_zero_subscriber_medium() {
        // One cheap medium without subscribers: seeds still flow to it once
        // the paying medium saturates, and the tie at the boundary doubles
        // the equilibrium set.
        let g = GameSetting::new(
            100,
            vec![
                MediumParams::new(250, int(15)).unwrap(),
                MediumParams::zero_subscribers(int(10)).unwrap(),
            ],
        )
        .unwrap();
        let set = enumerate_equilibria(&g);
        assert_eq!(set.members(), &loadset(&[&[49, 51], &[50, 50]])[..]);
        let oracle = brute_force_equilibria(&g).unwrap();
        assert_eq!(set, oracle);
    }

    #[test]
    fn fractional_costs_keep_ties_exact() {
        // gamma = 1/2 on both media; potentials tie exactly where floats
        // would waver.
        let g = GameSetting::new(
            1,
            vec![
                MediumParams::new(7, ratio(1, 2)).unwrap(),
                MediumParams::new(7, ratio(1, 2)).unwrap(),
            ],
        )
        .unwrap();
        let set = brute_force_equilibria(&g).unwrap();
        assert_eq!(set.len(), 2);
        assert_eq!(set.potential(), &Value::Exact(ratio(13, 2)));
    }
}
