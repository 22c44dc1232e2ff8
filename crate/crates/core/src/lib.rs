//! Solvers and analysis for the atomic, non-splittable social-medium
//! selection congestion game.
//!
//! `K` seeds (content producers) each pick one of `J` social media. Medium
//! `j` has `N_j` subscribers and a per-seed dissemination cost `gamma_j`,
//! so a seed on medium `j` with load `l_j` earns `N_j / l_j - gamma_j`.
//! The game is a congestion game with exact potential
//!
//! ```text
//! Pot(l) = sum_j ( N_j * H(l_j) - gamma_j * l_j ),    H(n) = 1 + 1/2 + ... + 1/n,
//! ```
//!
//! whose global maximizers over the simplex of integer load vectors are
//! exactly the pure Nash equilibria. The potential is M-concave, which
//! makes local search global and keeps every pair of equilibria within
//! Chebyshev distance one.
//!
//! The crate provides:
//!
//! - [`model`]: domain types, utility/potential/marginal evaluation and the
//!   exact Nash test;
//! - [`mconcavity`]: exchange-inequality checkers for the extended potential
//!   and its scaled variant;
//! - [`solvers`]: best-response dynamics, bounded steepest descent, arrival
//!   learning, scaling descent, the brute-force oracle and complete
//!   equilibrium enumeration;
//! - [`analysis`]: asymptotic load predictions, social welfare, social
//!   optimum and price of anarchy;
//! - [`schema`]: the JSON wire format for game settings.
//!
//! Equilibrium decisions always run on exact rational arithmetic: potential
//! ties determine how many equilibria exist, so floating point would simply
//! get them wrong. A float backend exists for large-scale sweeps where only
//! argmax decisions matter. See [`value::Backend`].
//!
//! With the default `parallel` feature, the brute-force oracle partitions
//! its domain scan across rayon workers; results are deterministic either
//! way. Build with `--no-default-features` for the sequential fallback.

pub mod analysis;
pub mod domain;
pub mod error;
pub mod harmonic;
pub mod mconcavity;
pub mod model;
pub mod schema;
pub mod solvers;
pub mod value;

pub use error::{Error, Result};
pub use model::{GameSetting, LoadVector, MediumParams, StrategyProfile};
pub use value::{Backend, Rational, Value};
