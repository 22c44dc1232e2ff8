//! Steepest-descent maximization of the potential: the bounded variant
//! with lower-bound certificates, and its scaling refinement for large `K`.

use crate::error::{Error, Result};
use crate::harmonic::harmonic_span_exact;
use crate::model::{GameSetting, LoadVector};
use crate::value::Rational;
use num_bigint::BigInt;
use num_traits::Signed;

/// Lower-bound certificates accumulated by [`sd_max`]: whenever medium `v`
/// wins an exchange, no equilibrium tracked by the search has fewer than
/// `b_v` seeds on `v`. The invariant `b_j <= l_j + 1` holds throughout.
#[derive(Clone, Debug)]
pub struct ActiveBounds(Vec<u64>);

impl ActiveBounds {
    pub fn bounds(&self) -> &[u64] {
        &self.0
    }
}

/// Outcome of a bounded steepest-descent run.
#[derive(Clone, Debug)]
pub struct SdMaxRun {
    pub load: LoadVector,
    pub iterations: u64,
    pub bounds: ActiveBounds,
}

/// Equilibrium load via bounded steepest descent from `K * e_1`.
pub fn sd_max(setting: &GameSetting) -> LoadVector {
    sd_max_run(setting).load
}

/// [`sd_max`] with its iteration count and final bound certificates.
///
/// Each iteration removes a seed from the lowest-indexed medium still above
/// its bound and reinserts it where the marginal gain on the reduced vector
/// is largest (lowest index on ties). The winning medium's bound rises to
/// its new load, so `sum_j (K - b_j)` strictly decreases: at most `K * J`
/// iterations, each of cost `O(J)`.
///
/// Reinsertion scores the *reduced* vector, so giving the seed back to the
/// donor scores `N_u / l_u - gamma_u`, not the donor's pre-removal
/// marginal. Scoring the unreduced vector can over-tighten the donor's
/// bound and evict every maximizer from the tracked region.
pub fn sd_max_run(setting: &GameSetting) -> SdMaxRun {
    let media = setting.media_count();
    let mut loads = vec![0u64; media];
    loads[0] = setting.seeds();
    let mut bounds = vec![0u64; media];
    let mut iterations: u64 = 0;

    while let Some(donor) = (0..media).find(|&u| loads[u] >= bounds[u] + 1) {
        iterations += 1;
        loads[donor] -= 1;
        let mut winner = 0usize;
        let mut best = setting.marginal_exact(&loads, 0);
        for t in 1..media {
            let gain = setting.marginal_exact(&loads, t);
            if gain > best {
                best = gain;
                winner = t;
            }
        }
        loads[winner] += 1;
        bounds[winner] = loads[winner];
        debug_assert!((0..media).all(|j| bounds[j] <= loads[j] + 1));
    }

    SdMaxRun {
        load: LoadVector::new(loads),
        iterations,
        bounds: ActiveBounds(bounds),
    }
}

/// Finds an integer vector `y` with `sum_j y_j = 0` whose components obey
/// `ceil((m_j - x_j) / alpha) <= y_j <= floor((M_j - x_j) / alpha)`, i.e.
/// `x + alpha * y` lands between `m` and `M`. Runs in `O(J)`.
///
/// The result is deterministic: the componentwise closest-to-zero vector,
/// rebalanced left to right.
pub fn find_vector_in_bounds(
    x: &[u64],
    lower: &[i64],
    upper: &[i64],
    alpha: u64,
) -> Result<Vec<i64>> {
    assert!(alpha >= 1, "scaling step must be positive");
    assert!(x.len() == lower.len() && x.len() == upper.len());
    let step = alpha as i64;
    let mut lo = Vec::with_capacity(x.len());
    let mut hi = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        let base = x[j] as i64;
        let l = div_ceil(lower[j] - base, step);
        let h = div_floor(upper[j] - base, step);
        if l > h {
            return Err(Error::InfeasibleBounds {
                reason: format!("component {j} admits no multiple of {alpha} in range"),
            });
        }
        lo.push(l);
        hi.push(h);
    }

    let mut y: Vec<i64> = lo.iter().zip(&hi).map(|(&l, &h)| 0i64.clamp(l, h)).collect();
    let mut excess: i64 = y.iter().sum();
    for j in 0..y.len() {
        if excess > 0 {
            let give = (y[j] - lo[j]).min(excess);
            y[j] -= give;
            excess -= give;
        } else if excess < 0 {
            let take = (hi[j] - y[j]).min(-excess);
            y[j] += take;
            excess += take;
        }
    }
    if excess != 0 {
        return Err(Error::InfeasibleBounds {
            reason: "components cannot balance to zero sum".to_string(),
        });
    }
    Ok(y)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// Equilibrium load via scaling steepest descent.
///
/// The step size starts at the largest power of two at most `max(1, K/J)`
/// and halves each phase; every phase runs steepest ascent with moves of
/// `alpha` seeds on the potential, restricted to a window that shrinks
/// around the previous phase's result. The window radius `(J-1)(alpha-1)`
/// always keeps some global maximizer inside, so the final unit-step phase
/// lands on an equilibrium. Phase count is logarithmic in `K/J` and each
/// phase takes `O(J^2)` moves of cost `O(J)`.
pub fn scaling_descent(setting: &GameSetting) -> Result<LoadVector> {
    let media = setting.media_count();
    let seeds = setting.seeds();
    if seeds == 0 {
        return Ok(LoadVector::zeros(media));
    }
    let mut loads = vec![0u64; media];
    loads[0] = seeds;
    let mut lower = vec![0i64; media];
    let mut upper = vec![seeds as i64; media];
    let mut alpha = largest_power_of_two(std::cmp::max(1, seeds / media as u64));

    loop {
        let anchor = find_vector_in_bounds(&loads, &lower, &upper, alpha)?;
        for (load, step) in loads.iter_mut().zip(&anchor) {
            *load = (*load as i64 + alpha as i64 * step) as u64;
        }
        alpha_phase(setting, &mut loads, &lower, &upper, alpha);
        if alpha == 1 {
            return Ok(LoadVector::new(loads));
        }
        let radius = (media as i64 - 1) * (alpha as i64 - 1);
        for j in 0..media {
            lower[j] = lower[j].max(loads[j] as i64 - radius);
            upper[j] = upper[j].min(loads[j] as i64 + radius);
        }
        alpha /= 2;
    }
}

/// Steepest ascent with moves of `alpha` seeds inside `[lower, upper]`,
/// until no move strictly increases the potential.
fn alpha_phase(
    setting: &GameSetting,
    loads: &mut [u64],
    lower: &[i64],
    upper: &[i64],
    alpha: u64,
) {
    let media = setting.media_count();
    loop {
        // Gain of inserting `alpha` seeds at v and drop of removing them
        // from u, as potential differences off the shared current point.
        let gains: Vec<Option<Rational>> = (0..media)
            .map(|v| {
                ((loads[v] + alpha) as i64 <= upper[v]).then(|| block_value(setting, loads[v], alpha, v))
            })
            .collect();
        let drops: Vec<Option<Rational>> = (0..media)
            .map(|u| {
                (loads[u] >= alpha && (loads[u] - alpha) as i64 >= lower[u])
                    .then(|| block_value(setting, loads[u] - alpha, alpha, u))
            })
            .collect();

        let mut best: Option<(Rational, usize, usize)> = None;
        for (u, drop) in drops.iter().enumerate() {
            let Some(drop) = drop else { continue };
            for (v, gain) in gains.iter().enumerate() {
                if u == v {
                    continue;
                }
                let Some(gain) = gain else { continue };
                let improvement = gain - drop;
                if !improvement.is_positive() {
                    continue;
                }
                match &best {
                    Some((incumbent, _, _)) if *incumbent >= improvement => {}
                    _ => best = Some((improvement, u, v)),
                }
            }
        }
        match best {
            Some((_, u, v)) => {
                loads[u] -= alpha;
                loads[v] += alpha;
            }
            None => return,
        }
    }
}

/// `N_j * (H(base + alpha) - H(base)) - gamma_j * alpha`: the potential
/// contribution of the `alpha` seeds sitting on positions
/// `base+1 ..= base+alpha` of medium `j`.
fn block_value(setting: &GameSetting, base: u64, alpha: u64, j: usize) -> Rational {
    let params = &setting.media()[j];
    harmonic_span_exact(base, base + alpha) * BigInt::from(params.subscribers())
        - params.cost() * BigInt::from(alpha)
}

fn largest_power_of_two(n: u64) -> u64 {
    debug_assert!(n >= 1);
    1 << (63 - n.leading_zeros())
}
