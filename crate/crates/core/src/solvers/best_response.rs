//! Guided best-response dynamics: move the seed whose deviation increases
//! the potential most, stop at a fixed point.

use crate::error::Result;
use crate::model::{GameSetting, LoadVector};
use crate::value::Rational;
use num_traits::{Signed, Zero};

/// Runs the best-response loop from `start` until no single-seed deviation
/// strictly increases the potential. The fixed point is a Nash equilibrium
/// and, by M-concavity, a global potential maximizer.
///
/// Each step compares potential differences (`marginal - departure`) rather
/// than recomputing potentials. Ties prefer staying put, then the lowest
/// donor/receiver pair, so runs are reproducible. Termination is guaranteed
/// by strict potential increase over a finite domain.
pub fn best_response_dynamics(setting: &GameSetting, start: &LoadVector) -> Result<LoadVector> {
    setting.check_load(start)?;
    let media = setting.media_count();
    let mut loads = start.to_vec();
    loop {
        let marginals: Vec<Rational> = (0..media)
            .map(|i| setting.marginal_exact(&loads, i))
            .collect();
        let mut best: Option<(Rational, usize, usize)> = None;
        for donor in 0..media {
            if loads[donor] == 0 {
                continue;
            }
            let departure = setting.departure_exact(&loads, donor);
            for (receiver, marginal) in marginals.iter().enumerate() {
                if receiver == donor {
                    continue;
                }
                let gain = marginal - &departure;
                if gain.is_zero() || gain.is_negative() {
                    continue;
                }
                match &best {
                    Some((incumbent, _, _)) if *incumbent >= gain => {}
                    _ => best = Some((gain, donor, receiver)),
                }
            }
        }
        match best {
            Some((_, donor, receiver)) => {
                loads[donor] -= 1;
                loads[receiver] += 1;
            }
            None => return Ok(LoadVector::new(loads)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MediumParams;
    use crate::value::{int, Backend};

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

    #[test]
    fn climbs_to_an_equal_potential_maximizer() {
        // From (0,2) the only improving move reaches (1,1); (1,1) ties with
        // (2,0) at potential 6, and ties mean stop.
        let g = setting(2, &[(4, 0), (2, 0)]);
        let end = best_response_dynamics(&g, &LoadVector::new(vec![0, 2])).unwrap();
        assert_eq!(end.loads(), &[1, 1]);
        assert!(g.is_nash(&end, Backend::Exact).unwrap());
    }

    #[test]
    fn fixed_point_is_returned_unchanged() {
        let g = setting(2, &[(4, 0), (2, 0)]);
        let start = LoadVector::new(vec![2, 0]);
        assert_eq!(best_response_dynamics(&g, &start).unwrap(), start);
    }

    #[test]
    fn reaches_the_unique_maximizer_from_the_far_corner() {
        let g = setting(3, &[(100, 2), (25, 1), (20, 1)]);
        let end = best_response_dynamics(&g, &LoadVector::new(vec![0, 0, 3])).unwrap();
        assert_eq!(end.loads(), &[3, 0, 0]);
    }

    #[test]
    fn empty_game_has_nothing_to_move() {
        let g = setting(0, &[(4, 0), (2, 0)]);
        let end = best_response_dynamics(&g, &LoadVector::new(vec![0, 0])).unwrap();
        assert_eq!(end.loads(), &[0, 0]);
    }
}
