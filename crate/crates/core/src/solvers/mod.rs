//! Equilibrium-finding procedures.
//!
//! Four constructive solvers plus the ground-truth machinery:
//!
//! - [`best_response_dynamics`]: repeated best single-seed deviation from an
//!   arbitrary start;
//! - [`sd_max`]: bounded steepest descent from `K * e_1`, at most `K * J`
//!   iterations;
//! - [`order_learning`]: seeds arrive one by one, each maximizing its
//!   payoff; each prefix of the run is an equilibrium of the prefix game;
//! - [`scaling_descent`]: steepest descent on coarse-to-fine step sizes,
//!   geometric in `K`;
//! - [`brute_force_equilibria`]: exhaustive potential maximization over the
//!   whole domain, the oracle everything else is tested against;
//! - [`enumerate_equilibria`]: the complete equilibrium set from one
//!   equilibrium plus a Chebyshev-ball scan.
//!
//! Everything decides ties with exact arithmetic and breaks argmax ties
//! toward the lowest medium index.

mod best_response;
mod descent;
mod learning;
mod oracle;

pub use best_response::best_response_dynamics;
pub use descent::{
    find_vector_in_bounds, scaling_descent, sd_max, sd_max_run, ActiveBounds, SdMaxRun,
};
pub use learning::{add_seed, order_learning, LearningTrace, SeedArrivals};
pub use oracle::{
    brute_force_equilibria, brute_force_equilibria_sequential, brute_force_equilibria_with_budget,
    enumerate_equilibria, EquilibriumSet, DEFAULT_ENUMERATION_BUDGET,
};
