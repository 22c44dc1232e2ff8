//! Welfare, social optimum, price of anarchy, large-`K` load predictions
//! and the combinatorics of the equilibrium-count bound.

use crate::domain::binomial_u128;
use crate::error::{Error, Result};
use crate::model::{GameSetting, LoadVector, MediumParams};
use crate::solvers::{enumerate_equilibria, order_learning};
use crate::value::{rational_to_f64, Backend, Rational, Value};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// How media behave as `K` grows: the minimal-cost group absorbs every new
/// seed in proportion to its subscriber counts, while every other medium's
/// load freezes at a plateau.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticPrediction {
    /// The minimal dissemination cost.
    pub gamma_min: Rational,
    /// Media attaining the minimal cost, ascending.
    pub min_cost_group: Vec<usize>,
    /// Limit load `ceil(N_j / (gamma_j - gamma_min)) - 1` for each medium
    /// outside the group.
    pub plateaus: BTreeMap<usize, u64>,
    /// Limit share `N_w / sum_{t in G} N_t` of group seeds for each group
    /// member.
    pub shares: BTreeMap<usize, Rational>,
}

/// Welfare at an equilibrium against the social optimum.
#[derive(Clone, Debug)]
pub struct WelfareReport {
    pub nash_load: LoadVector,
    pub nash_welfare: Value,
    pub optimum_load: LoadVector,
    pub optimum_welfare: Value,
    /// `optimum_welfare / nash_welfare` when both are positive or both
    /// negative; absent when the signs differ or the denominator is zero.
    pub poa: Option<Value>,
}

/// Ball scans over `3^J` candidates stay affordable up to this many media.
const WORST_CASE_SCAN_MAX_MEDIA: usize = 20;

/// Support enumeration is `2^J`; refuse settings past this.
const SUPPORT_ENUMERATION_MAX_MEDIA: usize = 30;

/// Predicts the limiting equilibrium shape of the setting as seeds grow.
///
/// Degenerate only when every minimal-cost medium has zero subscribers
/// (possible under the zero-subscriber escape hatch), where market shares
/// are undefined.
pub fn asymptotic_prediction(setting: &GameSetting) -> Result<AsymptoticPrediction> {
    let gamma_min = setting
        .media()
        .iter()
        .map(MediumParams::cost)
        .min()
        .expect("settings have at least one medium")
        .clone();
    let group: Vec<usize> = (0..setting.media_count())
        .filter(|&j| *setting.media()[j].cost() == gamma_min)
        .collect();

    let group_subscribers: u64 = group
        .iter()
        .map(|&w| setting.media()[w].subscribers())
        .sum();
    if group_subscribers == 0 {
        return Err(Error::invalid_setting(
            "media",
            "market shares are undefined when the minimal-cost group has no subscribers",
        ));
    }

    let mut plateaus = BTreeMap::new();
    for j in 0..setting.media_count() {
        let params = &setting.media()[j];
        if *params.cost() == gamma_min {
            continue;
        }
        let excess = params.cost() - &gamma_min;
        let ratio = Rational::from_integer(BigInt::from(params.subscribers())) / excess;
        let plateau = (ratio.ceil().to_integer() - BigInt::from(1))
            .max(BigInt::zero())
            .to_u64()
            .expect("plateau exceeds u64");
        plateaus.insert(j, plateau);
    }

    let total = BigInt::from(group_subscribers);
    let shares = group
        .iter()
        .map(|&w| {
            (
                w,
                Rational::new(BigInt::from(setting.media()[w].subscribers()), total.clone()),
            )
        })
        .collect();

    Ok(AsymptoticPrediction {
        gamma_min,
        min_cost_group: group,
        plateaus,
        shares,
    })
}

/// Sum of utilities of a load vector: `sum over occupied media of
/// (N_j - gamma_j * l_j)`. Unoccupied media contribute nothing.
pub fn social_welfare(setting: &GameSetting, load: &LoadVector, backend: Backend) -> Value {
    match backend {
        Backend::Exact => Value::Exact(social_welfare_exact(setting, load)),
        Backend::Float => Value::Float(
            setting
                .media()
                .iter()
                .zip(load.iter())
                .filter(|(_, &l)| l > 0)
                .map(|(m, &l)| m.subscribers() as f64 - rational_to_f64(m.cost()) * l as f64)
                .sum(),
        ),
    }
}

pub fn social_welfare_exact(setting: &GameSetting, loads: &[u64]) -> Rational {
    let mut total = Rational::zero();
    for (params, &load) in setting.media().iter().zip(loads) {
        if load > 0 {
            total += Rational::from_integer(BigInt::from(params.subscribers()))
                - params.cost() * BigInt::from(load);
        }
    }
    total
}

/// The exact welfare maximizer over the domain, by support enumeration.
///
/// For a fixed set `S` of occupied media the best allocation puts one seed
/// on each member and the surplus on the cheapest member, for welfare
/// `sum_{j in S} (N_j - gamma_j) - min_{j in S} gamma_j * (K - |S|)`.
/// Scanning all `2^J - 1` supports with at most `K` members is exact.
/// Welfare ties resolve to the lexicographically smallest load.
pub fn social_optimum(setting: &GameSetting) -> Result<(LoadVector, Value)> {
    let media = setting.media_count();
    if media > SUPPORT_ENUMERATION_MAX_MEDIA {
        return Err(Error::TooManyMedia {
            media,
            limit: SUPPORT_ENUMERATION_MAX_MEDIA,
        });
    }
    let seeds = setting.seeds();
    if seeds == 0 {
        return Ok((LoadVector::zeros(media), Value::Exact(Rational::zero())));
    }

    let mut best: Option<(Rational, LoadVector)> = None;
    for mask in 1u64..(1u64 << media) {
        let size = u64::from(mask.count_ones());
        if size > seeds {
            continue;
        }
        let mut net = Rational::zero();
        let mut cheapest: Option<usize> = None;
        for j in 0..media {
            if mask & (1 << j) == 0 {
                continue;
            }
            let params = &setting.media()[j];
            net += Rational::from_integer(BigInt::from(params.subscribers())) - params.cost();
            if cheapest.is_none_or(|c| params.cost() < setting.media()[c].cost()) {
                cheapest = Some(j);
            }
        }
        let cheapest = cheapest.expect("mask is nonempty");
        let welfare = net - setting.media()[cheapest].cost() * BigInt::from(seeds - size);

        let better = match &best {
            None => true,
            Some((incumbent, load)) => {
                welfare > *incumbent
                    || (welfare == *incumbent
                        && support_fill(media, mask, cheapest, seeds, size) < *load)
            }
        };
        if better {
            best = Some((welfare, support_fill(media, mask, cheapest, seeds, size)));
        }
    }
    let (welfare, load) = best.expect("some support is feasible when K >= 1");
    Ok((load, Value::Exact(welfare)))
}

fn support_fill(media: usize, mask: u64, cheapest: usize, seeds: u64, size: u64) -> LoadVector {
    let mut loads = vec![0u64; media];
    for (j, load) in loads.iter_mut().enumerate() {
        if mask & (1 << j) != 0 {
            *load = 1;
        }
    }
    loads[cheapest] += seeds - size;
    LoadVector::new(loads)
}

/// Compares the worst equilibrium against the social optimum.
///
/// The equilibrium side comes from the complete equilibrium set when the
/// ball scan is affordable (worst welfare, then lexicographically smallest
/// load), otherwise from a single learning run. The ratio is reported only
/// when both welfares share a sign; the limit regime has both negative.
pub fn price_of_anarchy(setting: &GameSetting) -> Result<WelfareReport> {
    let nash_load = if setting.media_count() <= WORST_CASE_SCAN_MAX_MEDIA {
        let equilibria = enumerate_equilibria(setting);
        equilibria
            .members()
            .iter()
            .map(|load| (social_welfare_exact(setting, load), load.clone()))
            .min_by(|(wa, la), (wb, lb)| wa.cmp(wb).then_with(|| la.cmp(lb)))
            .expect("equilibrium sets are nonempty")
            .1
    } else {
        order_learning(setting, Backend::Exact).final_load
    };
    let nash_welfare = social_welfare_exact(setting, &nash_load);
    let (optimum_load, optimum_value) = social_optimum(setting)?;
    let optimum = optimum_value
        .as_exact()
        .expect("social_optimum is exact")
        .clone();

    let same_sign = (nash_welfare.is_positive() && optimum.is_positive())
        || (nash_welfare.is_negative() && optimum.is_negative());
    let poa = same_sign.then(|| Value::Exact(&optimum / &nash_welfare));

    Ok(WelfareReport {
        nash_load,
        nash_welfare: Value::Exact(nash_welfare),
        optimum_load,
        optimum_welfare: Value::Exact(optimum),
        poa,
    })
}

/// Upper bound `C(J, floor(J/2))` on the number of equilibrium loads of
/// any setting with `J` media.
pub fn equilibrium_bound(media: usize) -> u128 {
    binomial_u128(media as u128, media as u128 / 2).expect("bound exceeds u128")
}

/// The setting family attaining [`equilibrium_bound`]: `floor(J/2)` seeds
/// over `J` identical media. Every 0/1 load with `floor(J/2)` ones is then
/// an equilibrium.
pub fn tight_instance(media: usize, subscribers: u64, gamma: Rational) -> Result<GameSetting> {
    if media < 2 {
        return Err(Error::invalid_setting(
            "media",
            "the tight family needs at least two media",
        ));
    }
    let params: Result<Vec<MediumParams>> = (0..media)
        .map(|_| MediumParams::new(subscribers, gamma.clone()))
        .collect();
    GameSetting::new(media as u64 / 2, params?)
}

/// Checks the binomial convolution identity
/// `sum_k C(alpha, k) * C(J - alpha, k) = C(J, alpha)` by direct summation
/// (`alpha` is one-based, `1 <= alpha <= J`).
pub fn binomial_identity_check(media: u64, alpha: u64) -> bool {
    assert!((1..=media).contains(&alpha), "alpha must lie in 1..=J");
    let upper = alpha.min(media - alpha);
    let sum: u128 = (0..=upper)
        .map(|k| {
            binomial_u128(alpha as u128, k as u128).unwrap()
                * binomial_u128((media - alpha) as u128, k as u128).unwrap()
        })
        .sum();
    sum == binomial_u128(media as u128, alpha as u128).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
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

    fn fig1(seeds: u64) -> GameSetting {
        setting(seeds, &[(100, 2), (25, 1), (20, 1)])
    }

    #[test]
    fn prediction_for_the_reference_setting() {
        let p = asymptotic_prediction(&fig1(3)).unwrap();
        assert_eq!(p.gamma_min, int(1));
        assert_eq!(p.min_cost_group, vec![1, 2]);
        assert_eq!(p.plateaus, BTreeMap::from([(0usize, 99u64)]));
        assert_eq!(
            p.shares,
            BTreeMap::from([(1usize, ratio(5, 9)), (2usize, ratio(4, 9))])
        );
    }

    #[test]
    fn equal_costs_put_every_medium_in_the_group() {
        let p = asymptotic_prediction(&setting(5, &[(4, 2), (2, 2), (10, 2)])).unwrap();
        assert_eq!(p.min_cost_group, vec![0, 1, 2]);
        assert!(p.plateaus.is_empty());
        assert_eq!(
            p.shares,
            BTreeMap::from([(0usize, ratio(4, 16)), (1, ratio(2, 16)), (2, ratio(10, 16))])
        );
    }

    #[test]
    fn plateau_for_the_sensitivity_setting() {
        // N_1 = 250, gamma = (15, 10): plateau ceil(250/5) - 1 = 49.
        let p = asymptotic_prediction(&setting(100, &[(250, 15), (60, 10)])).unwrap();
        assert_eq!(p.plateaus, BTreeMap::from([(0usize, 49u64)]));
    }

    #[test]
    fn welfare_counts_occupied_media_only() {
        assert_eq!(
            social_welfare(&fig1(0), &LoadVector::new(vec![0, 0, 0]), Backend::Exact),
            Value::Exact(int(0))
        );
        assert_eq!(
            social_welfare(&fig1(3), &LoadVector::new(vec![1, 1, 1]), Backend::Exact),
            Value::Exact(int(141))
        );
        // (100 - 198) + (25 - 5500) + (20 - 4401)
        assert_eq!(
            social_welfare_exact(&fig1(10_000), &[99, 5500, 4401]),
            int(-9954)
        );
    }

    #[test]
    fn optimum_on_small_games() {
        let (load, welfare) = social_optimum(&setting(2, &[(4, 0), (2, 0)])).unwrap();
        assert_eq!(load.loads(), &[1, 1]);
        assert_eq!(welfare, Value::Exact(int(6)));

        // One seed: the best single medium.
        let (load, welfare) = social_optimum(&fig1(1)).unwrap();
        assert_eq!(load.loads(), &[1, 0, 0]);
        assert_eq!(welfare, Value::Exact(int(98)));

        let (load, welfare) = social_optimum(&fig1(0)).unwrap();
        assert_eq!(load.loads(), &[0, 0, 0]);
        assert_eq!(welfare, Value::Exact(int(0)));
    }

    #[test]
    fn optimum_at_the_large_k_closed_form() {
        // All media kept open, surplus on a cheapest one:
        // (98 + 24 + 19) - 1 * 9997.
        let (load, welfare) = social_optimum(&fig1(10_000)).unwrap();
        assert_eq!(welfare, Value::Exact(int(-9856)));
        assert_eq!(load.loads(), &[1, 9998, 1]);
    }

    #[test]
    fn poa_reports_the_worst_equilibrium() {
        // Equilibria (2,0) and (1,1) tie in potential; welfare 4 vs 6.
        let report = price_of_anarchy(&setting(2, &[(4, 0), (2, 0)])).unwrap();
        assert_eq!(report.nash_load.loads(), &[2, 0]);
        assert_eq!(report.nash_welfare, Value::Exact(int(4)));
        assert_eq!(report.optimum_welfare, Value::Exact(int(6)));
        assert_eq!(report.poa, Some(Value::Exact(ratio(3, 2))));
    }

    #[test]
    fn poa_is_one_for_a_single_medium() {
        let report = price_of_anarchy(&setting(5, &[(9, 2)])).unwrap();
        assert_eq!(report.nash_load, report.optimum_load);
        assert_eq!(report.poa, Some(Value::Exact(int(1))));
    }

    #[test]
    fn poa_absent_when_the_equilibrium_welfare_is_zero() {
        // A single medium with N = gamma * K makes the only equilibrium
        // welfare exactly zero.
        let report = price_of_anarchy(&setting(2, &[(4, 2)])).unwrap();
        assert_eq!(report.nash_welfare, Value::Exact(int(0)));
        assert!(report.poa.is_none());
    }

    #[test]
    fn bound_values() {
        assert_eq!(equilibrium_bound(2), 2);
        assert_eq!(equilibrium_bound(4), 6);
        assert_eq!(equilibrium_bound(5), 10);
    }

    #[test]
    fn tight_instances_are_symmetric() {
        let g = tight_instance(4, 5, int(1)).unwrap();
        assert_eq!(g.seeds(), 2);
        assert_eq!(g.media_count(), 4);
        assert!(tight_instance(1, 5, int(1)).is_err());
    }

    #[test]
    fn binomial_identity_hand_values() {
        // J=4, alpha=2: 1 + 4 + 1 = 6.
        assert!(binomial_identity_check(4, 2));
        // alpha = J degenerates to a single term.
        assert!(binomial_identity_check(7, 7));
        // J=5, alpha=2: 1 + 6 + 3 = 10.
        assert!(binomial_identity_check(5, 2));
    }
}
