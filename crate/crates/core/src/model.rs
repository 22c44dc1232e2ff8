//! Domain types and the basic game quantities: utility, potential,
//! marginals, load-vector algebra and the exact Nash test.
//!
//! Indices are zero-based throughout the API; presentation layers add one
//! when they print medium or seed numbers.

use crate::error::{Error, Result};
use crate::harmonic::{harmonic_exact, harmonic_f64};
use crate::value::{rational_to_f64, Backend, Rational, Value};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::collections::BTreeSet;
use std::ops::Deref;

/// Parameters of one social medium: its subscriber count `N_j > 0` and its
/// nonnegative dissemination cost `gamma_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MediumParams {
    subscribers: u64,
    cost: Rational,
}

impl MediumParams {
    pub fn new(subscribers: u64, cost: Rational) -> Result<Self> {
        if subscribers == 0 {
            return Err(Error::invalid_setting("N", "subscriber count must be positive"));
        }
        Self::checked(subscribers, cost)
    }

    /// A medium with no subscribers at all. The model proper requires
    /// `N_j > 0`; this constructor exists for boundary studies where a
    /// medium competes on cost alone (its dissemination utility is zero and
    /// its marginal is `-gamma_j`).
    pub fn zero_subscribers(cost: Rational) -> Result<Self> {
        Self::checked(0, cost)
    }

    fn checked(subscribers: u64, cost: Rational) -> Result<Self> {
        if cost.is_negative() {
            return Err(Error::invalid_setting("gamma", "cost must be nonnegative"));
        }
        Ok(MediumParams { subscribers, cost })
    }

    pub fn subscribers(&self) -> u64 {
        self.subscribers
    }

    pub fn cost(&self) -> &Rational {
        &self.cost
    }
}

/// The game setting `(K, (N_j, gamma_j) for j in 1..=J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSetting {
    seeds: u64,
    media: Vec<MediumParams>,
}

/// A per-medium seed count summing to `K`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoadVector(Vec<u64>);

/// One medium choice per seed (zero-based medium indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyProfile(Vec<usize>);

impl LoadVector {
    pub fn new(loads: Vec<u64>) -> Self {
        LoadVector(loads)
    }

    pub fn zeros(media: usize) -> Self {
        LoadVector(vec![0; media])
    }

    pub fn loads(&self) -> &[u64] {
        &self.0
    }

    pub fn into_loads(self) -> Vec<u64> {
        self.0
    }

    pub fn sum(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn chebyshev_distance(&self, other: &LoadVector) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.abs_diff(b))
            .max()
            .unwrap_or(0)
    }

    /// All load vectors reachable by one seed deviating, `l + e_i - e_j`
    /// over pairs with `l_j > 0`. The vector itself appears through the
    /// `i = j` case whenever some medium is occupied.
    pub fn neighbors(&self) -> BTreeSet<LoadVector> {
        let mut out = BTreeSet::new();
        for j in 0..self.0.len() {
            if self.0[j] == 0 {
                continue;
            }
            for i in 0..self.0.len() {
                let mut next = self.0.clone();
                next[j] -= 1;
                next[i] += 1;
                out.insert(LoadVector(next));
            }
        }
        out
    }
}

impl Deref for LoadVector {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.0
    }
}

impl From<Vec<u64>> for LoadVector {
    fn from(loads: Vec<u64>) -> Self {
        LoadVector(loads)
    }
}

impl StrategyProfile {
    pub fn new(choices: Vec<usize>) -> Self {
        StrategyProfile(choices)
    }

    pub fn choices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl GameSetting {
    pub fn new(seeds: u64, media: Vec<MediumParams>) -> Result<Self> {
        if media.is_empty() {
            return Err(Error::invalid_setting("media", "at least one medium is required"));
        }
        Ok(GameSetting { seeds, media })
    }

    /// Number of seeds `K`.
    pub fn seeds(&self) -> u64 {
        self.seeds
    }

    /// Number of media `J`.
    pub fn media_count(&self) -> usize {
        self.media.len()
    }

    pub fn media(&self) -> &[MediumParams] {
        &self.media
    }

    pub fn medium(&self, j: usize) -> Result<&MediumParams> {
        self.media.get(j).ok_or(Error::MediumIndex {
            medium: j,
            media: self.media.len(),
        })
    }

    /// The same media with a different seed count.
    pub fn with_seeds(&self, seeds: u64) -> GameSetting {
        GameSetting {
            seeds,
            media: self.media.clone(),
        }
    }

    /// The same setting with medium `j` replaced.
    pub fn with_medium(&self, j: usize, params: MediumParams) -> Result<GameSetting> {
        self.medium(j)?;
        let mut media = self.media.clone();
        media[j] = params;
        Ok(GameSetting {
            seeds: self.seeds,
            media,
        })
    }

    /// Checks membership of `load` in the domain of this setting.
    pub fn check_load(&self, load: &LoadVector) -> Result<()> {
        if load.len() != self.media.len() {
            return Err(Error::LoadLen {
                expected: self.media.len(),
                got: load.len(),
            });
        }
        let sum = load.sum();
        if sum != self.seeds {
            return Err(Error::LoadSum {
                expected: self.seeds,
                got: sum,
            });
        }
        Ok(())
    }

    /// Per-medium seed counts induced by a strategy profile.
    pub fn loads_of(&self, profile: &StrategyProfile) -> Result<LoadVector> {
        if profile.len() as u64 != self.seeds {
            return Err(Error::invalid_setting(
                "profile",
                format!("profile has {} entries, expected K = {}", profile.len(), self.seeds),
            ));
        }
        let mut loads = vec![0u64; self.media.len()];
        for (position, &choice) in profile.choices().iter().enumerate() {
            if choice >= self.media.len() {
                return Err(Error::InvalidProfile {
                    position,
                    choice,
                    media: self.media.len(),
                });
            }
            loads[choice] += 1;
        }
        Ok(LoadVector(loads))
    }

    /// Utility of one seed under a profile: `N_s / l_s - gamma_s` where `s`
    /// is the seed's chosen medium.
    pub fn utility(&self, profile: &StrategyProfile, seed: usize, backend: Backend) -> Result<Value> {
        if seed >= profile.len() {
            return Err(Error::SeedIndex {
                seed,
                seeds: profile.len() as u64,
            });
        }
        let loads = self.loads_of(profile)?;
        let j = profile.choices()[seed];
        let params = &self.media[j];
        Ok(match backend {
            Backend::Exact => {
                let share = Rational::new(BigInt::from(params.subscribers), BigInt::from(loads[j]));
                Value::Exact(share - &params.cost)
            }
            Backend::Float => Value::Float(
                params.subscribers as f64 / loads[j] as f64 - rational_to_f64(&params.cost),
            ),
        })
    }

    /// Potential `sum_j (N_j H(l_j) - gamma_j l_j)` of a load vector.
    pub fn potential(&self, load: &LoadVector, backend: Backend) -> Result<Value> {
        self.check_load(load)?;
        Ok(match backend {
            Backend::Exact => Value::Exact(self.potential_unchecked(load)),
            Backend::Float => Value::Float(self.potential_f64_unchecked(load)),
        })
    }

    pub fn potential_exact(&self, load: &LoadVector) -> Result<Rational> {
        self.check_load(load)?;
        Ok(self.potential_unchecked(load))
    }

    pub(crate) fn potential_unchecked(&self, loads: &[u64]) -> Rational {
        let mut total = Rational::zero();
        for (params, &load) in self.media.iter().zip(loads) {
            if params.subscribers > 0 && load > 0 {
                total += harmonic_exact(load) * BigInt::from(params.subscribers);
            }
            if load > 0 {
                total -= &params.cost * BigInt::from(load);
            }
        }
        total
    }

    pub(crate) fn potential_f64_unchecked(&self, loads: &[u64]) -> f64 {
        self.media
            .iter()
            .zip(loads)
            .map(|(params, &load)| {
                params.subscribers as f64 * harmonic_f64(load)
                    - rational_to_f64(&params.cost) * load as f64
            })
            .sum()
    }

    /// Marginal potential gain of adding one seed to medium `j`:
    /// `N_j / (l_j + 1) - gamma_j = Pot(l + e_j) - Pot(l)`.
    pub fn marginal(&self, loads: &[u64], j: usize, backend: Backend) -> Value {
        match backend {
            Backend::Exact => Value::Exact(self.marginal_exact(loads, j)),
            Backend::Float => Value::Float(self.marginal_f64(loads, j)),
        }
    }

    pub fn marginal_exact(&self, loads: &[u64], j: usize) -> Rational {
        let params = &self.media[j];
        Rational::new(BigInt::from(params.subscribers), BigInt::from(loads[j] + 1)) - &params.cost
    }

    pub fn marginal_f64(&self, loads: &[u64], j: usize) -> f64 {
        let params = &self.media[j];
        params.subscribers as f64 / (loads[j] + 1) as f64 - rational_to_f64(&params.cost)
    }

    /// Potential drop from removing one seed from medium `j`:
    /// `Pot(l) - Pot(l - e_j) = N_j / l_j - gamma_j`. Requires `l_j >= 1`.
    pub(crate) fn departure_exact(&self, loads: &[u64], j: usize) -> Rational {
        debug_assert!(loads[j] >= 1);
        let params = &self.media[j];
        Rational::new(BigInt::from(params.subscribers), BigInt::from(loads[j])) - &params.cost
    }

    /// Exact Nash test: `load` is an equilibrium iff no single-seed
    /// deviation increases the potential. By M-concavity this local
    /// condition certifies a global potential maximum.
    ///
    /// Potential ties decide equilibrium membership, so the float backend
    /// is refused.
    pub fn is_nash(&self, load: &LoadVector, backend: Backend) -> Result<bool> {
        if backend == Backend::Float {
            return Err(Error::ExactRequired { op: "is_nash" });
        }
        self.check_load(load)?;
        // Moving a seed from j to i changes the potential by
        // marginal(l, i) - departure(l, j); compare differences instead of
        // recomputing full potentials.
        let marginals: Vec<Rational> = (0..self.media.len())
            .map(|i| self.marginal_exact(load, i))
            .collect();
        for j in 0..self.media.len() {
            if load[j] == 0 {
                continue;
            }
            let departure = self.departure_exact(load, j);
            for (i, gain) in marginals.iter().enumerate() {
                if i != j && *gain > departure {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The canonical strategy profile realizing a load vector: the first
    /// `l_1` seeds on medium 1, the next `l_2` on medium 2, and so on.
    pub fn realize_profile(&self, load: &LoadVector) -> Result<StrategyProfile> {
        self.check_load(load)?;
        let mut choices = Vec::with_capacity(self.seeds as usize);
        for (j, &count) in load.iter().enumerate() {
            choices.extend(std::iter::repeat(j).take(count as usize));
        }
        Ok(StrategyProfile(choices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    fn two_media() -> GameSetting {
        // N = (4, 2), gamma = (0, 0)
        GameSetting::new(
            2,
            vec![
                MediumParams::new(4, int(0)).unwrap(),
                MediumParams::new(2, int(0)).unwrap(),
            ],
        )
        .unwrap()
    }

    fn fig1(seeds: u64) -> GameSetting {
        GameSetting::new(
            seeds,
            vec![
                MediumParams::new(100, int(2)).unwrap(),
                MediumParams::new(25, int(1)).unwrap(),
                MediumParams::new(20, int(1)).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(MediumParams::new(0, int(1)).is_err());
        assert!(MediumParams::new(3, int(-1)).is_err());
        assert!(MediumParams::zero_subscribers(int(2)).is_ok());
        assert!(GameSetting::new(5, vec![]).is_err());
    }

    #[test]
    fn loads_count_choices() {
        let setting = two_media();
        let profile = StrategyProfile::new(vec![0, 0]);
        assert_eq!(setting.loads_of(&profile).unwrap().loads(), &[2, 0]);

        let setting3 = setting.with_seeds(3);
        let profile = StrategyProfile::new(vec![0, 0, 1]);
        assert_eq!(setting3.loads_of(&profile).unwrap().loads(), &[2, 1]);

        let empty = setting.with_seeds(0);
        let profile = StrategyProfile::new(vec![]);
        assert_eq!(empty.loads_of(&profile).unwrap().loads(), &[0, 0]);

        let profile = StrategyProfile::new(vec![1, 1]);
        assert_eq!(setting.loads_of(&profile).unwrap().loads(), &[0, 2]);

        let bad = StrategyProfile::new(vec![0, 7]);
        assert!(matches!(
            setting.loads_of(&bad),
            Err(Error::InvalidProfile { position: 1, choice: 7, .. })
        ));
    }

    #[test]
    fn utility_is_share_minus_cost() {
        let setting = two_media();
        let both_first = StrategyProfile::new(vec![0, 0]);
        assert_eq!(
            setting.utility(&both_first, 0, Backend::Exact).unwrap(),
            Value::Exact(int(2))
        );
        let split = StrategyProfile::new(vec![0, 1]);
        assert_eq!(
            setting.utility(&split, 1, Backend::Exact).unwrap(),
            Value::Exact(int(2))
        );
        // N_j = gamma_j and a single seed cancel out.
        let cancel = GameSetting::new(1, vec![MediumParams::new(3, int(3)).unwrap()]).unwrap();
        let solo = StrategyProfile::new(vec![0]);
        assert_eq!(
            cancel.utility(&solo, 0, Backend::Exact).unwrap(),
            Value::Exact(int(0))
        );
        assert!(setting.utility(&both_first, 5, Backend::Exact).is_err());
    }

    #[test]
    fn potential_values() {
        let setting = two_media();
        // 4 * (1 + 1/2) = 6
        assert_eq!(
            setting.potential_exact(&LoadVector::new(vec![2, 0])).unwrap(),
            int(6)
        );
        let empty = setting.with_seeds(0);
        assert_eq!(
            empty.potential_exact(&LoadVector::new(vec![0, 0])).unwrap(),
            int(0)
        );
        // 98 + 24 + 19
        assert_eq!(
            fig1(3).potential_exact(&LoadVector::new(vec![1, 1, 1])).unwrap(),
            int(141)
        );
        assert!(matches!(
            setting.potential_exact(&LoadVector::new(vec![2, 1])),
            Err(Error::LoadSum { .. })
        ));
    }

    #[test]
    fn marginal_is_potential_difference() {
        let setting = fig1(3);
        let empty = [0u64, 0, 0];
        assert_eq!(setting.marginal_exact(&empty, 0), int(98));
        assert_eq!(setting.marginal_exact(&empty, 1), int(24));
        assert_eq!(setting.marginal_exact(&empty, 2), int(19));

        let two = two_media();
        assert_eq!(two.marginal_exact(&[2, 0], 0), ratio(4, 3));
        assert_eq!(two.marginal_exact(&[2, 0], 1), int(2));

        // l_j = N_j / gamma_j - 1 makes the marginal vanish.
        let balanced = GameSetting::new(3, vec![MediumParams::new(6, int(2)).unwrap()]).unwrap();
        assert_eq!(balanced.marginal_exact(&[2], 0), int(0));
    }

    #[test]
    fn neighbors_enumerate_single_deviations() {
        let expect = |loads: &[Vec<u64>]| -> BTreeSet<LoadVector> {
            loads.iter().cloned().map(LoadVector::new).collect()
        };
        assert_eq!(
            LoadVector::new(vec![1, 1]).neighbors(),
            expect(&[vec![1, 1], vec![2, 0], vec![0, 2]])
        );
        assert_eq!(
            LoadVector::new(vec![2, 0]).neighbors(),
            expect(&[vec![2, 0], vec![1, 1]])
        );
        assert_eq!(
            LoadVector::new(vec![1, 0, 0]).neighbors(),
            expect(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
        );
        assert!(LoadVector::new(vec![0, 0]).neighbors().is_empty());
    }

    #[test]
    fn nash_test_matches_hand_computed_potentials() {
        let setting = two_media();
        // Potentials: (2,0) -> 6, (1,1) -> 6, (0,2) -> 3.
        assert!(setting.is_nash(&LoadVector::new(vec![2, 0]), Backend::Exact).unwrap());
        assert!(setting.is_nash(&LoadVector::new(vec![1, 1]), Backend::Exact).unwrap());
        assert!(!setting.is_nash(&LoadVector::new(vec![0, 2]), Backend::Exact).unwrap());

        let empty = setting.with_seeds(0);
        assert!(empty.is_nash(&LoadVector::new(vec![0, 0]), Backend::Exact).unwrap());

        assert!(fig1(3).is_nash(&LoadVector::new(vec![3, 0, 0]), Backend::Exact).unwrap());
        assert!(!fig1(3).is_nash(&LoadVector::new(vec![1, 1, 1]), Backend::Exact).unwrap());

        assert!(matches!(
            setting.is_nash(&LoadVector::new(vec![2, 0]), Backend::Float),
            Err(Error::ExactRequired { .. })
        ));
    }

    #[test]
    fn profile_realization_is_block_ordered() {
        let setting = two_media().with_seeds(3);
        let profile = setting.realize_profile(&LoadVector::new(vec![2, 1])).unwrap();
        assert_eq!(profile.choices(), &[0, 0, 1]);

        let profile = two_media().realize_profile(&LoadVector::new(vec![0, 2])).unwrap();
        assert_eq!(profile.choices(), &[1, 1]);

        let three = fig1(2);
        let profile = three.realize_profile(&LoadVector::new(vec![1, 0, 1])).unwrap();
        assert_eq!(profile.choices(), &[0, 2]);

        // Round trip.
        let load = LoadVector::new(vec![1, 0, 1]);
        assert_eq!(three.loads_of(&three.realize_profile(&load).unwrap()).unwrap(), load);
    }
}
