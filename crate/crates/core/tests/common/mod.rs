//! Shared corpus machinery for the integration suites: seeded random
//! instances in the small regime where the brute-force oracle is cheap.
#![allow(dead_code)]

use medium_select::value::ratio;
use medium_select::{GameSetting, LoadVector, MediumParams};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random instance: 2-4 media, up to 12 seeds, subscriber counts in
/// 1..=100 and costs with denominator at most 4 in [0, 10].
pub fn random_setting(rng: &mut ChaCha8Rng) -> GameSetting {
    let media_count = rng.random_range(2usize..=4);
    let seeds = rng.random_range(0u64..=12);
    random_setting_shaped(rng, media_count, seeds)
}

pub fn random_setting_shaped(
    rng: &mut ChaCha8Rng,
    media_count: usize,
    seeds: u64,
) -> GameSetting {
    let media = (0..media_count)
        .map(|_| {
            let subscribers = rng.random_range(1u64..=100);
            let denominator = rng.random_range(1i64..=4);
            let numerator = rng.random_range(0i64..=10 * denominator);
            MediumParams::new(subscribers, ratio(numerator, denominator)).unwrap()
        })
        .collect();
    GameSetting::new(seeds, media).unwrap()
}

/// The deterministic 200-instance corpus shared by the acceptance
/// criteria.
pub fn corpus() -> Vec<GameSetting> {
    let mut rng = rng(0x5EED_CA5E);
    (0..200).map(|_| random_setting(&mut rng)).collect()
}

/// A random member of the domain: seeds fall between sorted uniform cuts.
pub fn random_load(rng: &mut ChaCha8Rng, setting: &GameSetting) -> LoadVector {
    let media = setting.media_count();
    let seeds = setting.seeds();
    let mut cuts: Vec<u64> = (0..media - 1).map(|_| rng.random_range(0..=seeds)).collect();
    cuts.sort_unstable();
    cuts.push(seeds);
    let mut loads = Vec::with_capacity(media);
    let mut previous = 0;
    for cut in cuts {
        loads.push(cut - previous);
        previous = cut;
    }
    LoadVector::new(loads)
}

/// A random offset `y` with zero sum keeping `x0 + alpha * y` in the
/// domain, built from a handful of feasible unit transfers.
pub fn random_scaled_offset(
    rng: &mut ChaCha8Rng,
    x0: &LoadVector,
    alpha: u64,
) -> Vec<i64> {
    let media = x0.len();
    let mut offset = vec![0i64; media];
    let transfers = rng.random_range(0..=3);
    for _ in 0..transfers {
        let donor = rng.random_range(0..media);
        let receiver = rng.random_range(0..media);
        if donor == receiver {
            continue;
        }
        let after = x0[donor] as i64 + alpha as i64 * (offset[donor] - 1);
        if after >= 0 {
            offset[donor] -= 1;
            offset[receiver] += 1;
        }
    }
    offset
}
