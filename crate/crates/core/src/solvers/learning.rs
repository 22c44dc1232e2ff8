//! Arrival learning: seeds join one at a time, each choosing a medium with
//! maximal marginal payoff. Adding a payoff-maximizing seed to an
//! equilibrium yields an equilibrium of the enlarged game, so every prefix
//! of the run is itself an equilibrium load.

use crate::error::Result;
use crate::model::{GameSetting, LoadVector};
use crate::value::{rational_to_f64, Backend, Rational, Value};

/// Record of one learning run: the chosen medium and its marginal value at
/// each arrival, and the final load vector. Marginals are nonincreasing
/// along the run.
#[derive(Clone, Debug)]
pub struct LearningTrace {
    pub chosen: Vec<usize>,
    pub marginals: Vec<Value>,
    pub final_load: LoadVector,
}

impl LearningTrace {
    /// Recounts the chosen media; equals `final_load` by construction.
    pub fn replay(&self, media: usize) -> LoadVector {
        let mut loads = vec![0u64; media];
        for &choice in &self.chosen {
            loads[choice] += 1;
        }
        LoadVector::new(loads)
    }
}

/// Incremental arrival process. Each [`step`](SeedArrivals::step) places one
/// seed on an argmax-marginal medium (lowest index on ties) and reports the
/// choice; sweeps over `K` read intermediate loads between steps.
pub struct SeedArrivals<'a> {
    setting: &'a GameSetting,
    backend: Backend,
    loads: Vec<u64>,
    // Float-backend parameter caches so the hot loop stays allocation-free.
    subscribers: Vec<f64>,
    costs: Vec<f64>,
}

impl<'a> SeedArrivals<'a> {
    pub fn new(setting: &'a GameSetting, backend: Backend) -> Self {
        let (subscribers, costs) = match backend {
            Backend::Float => (
                setting.media().iter().map(|m| m.subscribers() as f64).collect(),
                setting.media().iter().map(|m| rational_to_f64(m.cost())).collect(),
            ),
            Backend::Exact => (Vec::new(), Vec::new()),
        };
        SeedArrivals {
            setting,
            backend,
            loads: vec![0; setting.media_count()],
            subscribers,
            costs,
        }
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn arrivals(&self) -> u64 {
        self.loads.iter().sum()
    }

    /// Places the next seed; returns the chosen medium and the marginal it
    /// realized.
    pub fn step(&mut self) -> (usize, Value) {
        let (winner, marginal) = match self.backend {
            Backend::Exact => {
                let (w, m) = argmax_marginal_exact(self.setting, &self.loads);
                (w, Value::Exact(m))
            }
            Backend::Float => {
                let mut winner = 0usize;
                let mut best = self.subscribers[0] / (self.loads[0] + 1) as f64 - self.costs[0];
                for t in 1..self.loads.len() {
                    let gain = self.subscribers[t] / (self.loads[t] + 1) as f64 - self.costs[t];
                    if gain > best {
                        best = gain;
                        winner = t;
                    }
                }
                (winner, Value::Float(best))
            }
        };
        self.loads[winner] += 1;
        (winner, marginal)
    }
}

fn argmax_marginal_exact(setting: &GameSetting, loads: &[u64]) -> (usize, Rational) {
    let mut winner = 0usize;
    let mut best = setting.marginal_exact(loads, 0);
    for t in 1..loads.len() {
        let gain = setting.marginal_exact(loads, t);
        if gain > best {
            best = gain;
            winner = t;
        }
    }
    (winner, best)
}

/// Runs the full arrival process for the setting's `K` seeds.
pub fn order_learning(setting: &GameSetting, backend: Backend) -> LearningTrace {
    let seeds = setting.seeds() as usize;
    let mut arrivals = SeedArrivals::new(setting, backend);
    let mut chosen = Vec::with_capacity(seeds);
    let mut marginals = Vec::with_capacity(seeds);
    for _ in 0..seeds {
        let (choice, marginal) = arrivals.step();
        chosen.push(choice);
        marginals.push(marginal);
    }
    LearningTrace {
        chosen,
        marginals,
        final_load: LoadVector::new(arrivals.loads.clone()),
    }
}

/// Extends an equilibrium of the `K`-seed game to one of the `K+1`-seed
/// game by placing the extra seed on an argmax-marginal medium (lowest
/// index on ties). The input must be an equilibrium load of `setting`;
/// membership in the domain is checked, equilibriumhood is the caller's
/// contract.
pub fn add_seed(setting: &GameSetting, equilibrium: &LoadVector) -> Result<LoadVector> {
    setting.check_load(equilibrium)?;
    let (winner, _) = argmax_marginal_exact(setting, equilibrium);
    let mut loads = equilibrium.to_vec();
    loads[winner] += 1;
    Ok(LoadVector::new(loads))
}
